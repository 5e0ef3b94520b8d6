#pragma once

#include "balance.hpp"
#include "cuts.hpp"
#include "errors.hpp"
#include "flow.hpp"
#include "library.hpp"
#include "mapped_io.hpp"
#include "mapped_network.hpp"
#include "mapper.hpp"
#include "netlist_io.hpp"
#include "report.hpp"
#include "retime.hpp"
#include "subject_graph.hpp"
#include "supergate.hpp"
#include "tree_analytics.hpp"
#include "truth_table.hpp"
