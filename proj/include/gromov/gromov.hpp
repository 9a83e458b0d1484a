#pragma once

#include "delta.hpp"
#include "distance.hpp"
#include "edge_list.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "generators.hpp"
#include "genspec.hpp"
#include "graph.hpp"
#include "ringed_geometry.hpp"
#include "ringed_tree.hpp"
#include "rips.hpp"
