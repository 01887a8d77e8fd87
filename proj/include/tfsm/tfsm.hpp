/* tfsm.hpp -- umbrella header */
#pragma once

#include "core.hpp"
#include "dot.hpp"
#include "format.hpp"
#include "fsm_analysis.hpp"
#include "oracle.hpp"
#include "point_interval.hpp"
#include "rational.hpp"
#include "region.hpp"
#include "semantics.hpp"
#include "successor_tree.hpp"
