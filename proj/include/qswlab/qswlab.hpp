#pragma once

#include "qswlab/config.hpp"
#include "qswlab/core.hpp"
#include "qswlab/dynamics.hpp"
#include "qswlab/experiments.hpp"
#include "qswlab/generator.hpp"
#include "qswlab/graph.hpp"
#include "qswlab/graphs.hpp"
#include "qswlab/io.hpp"
#include "qswlab/nonmoralizing.hpp"
#include "qswlab/random_graph.hpp"
#include "qswlab/report.hpp"
#include "qswlab/run.hpp"
#include "qswlab/spectral.hpp"
#include "qswlab/state.hpp"
#include "qswlab/superoperator.hpp"
