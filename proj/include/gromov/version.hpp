#pragma once

#define GROMOV_VERSION "1.0.0"
