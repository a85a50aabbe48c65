// Umbrella header.
#ifndef THRG_THRG_HPP
#define THRG_THRG_HPP

#include "thrg/baselines.hpp"
#include "thrg/clique.hpp"
#include "thrg/cnf.hpp"
#include "thrg/errors.hpp"
#include "thrg/generator.hpp"
#include "thrg/grammar.hpp"
#include "thrg/graph.hpp"
#include "thrg/harness.hpp"
#include "thrg/metrics.hpp"
#include "thrg/pipeline.hpp"
#include "thrg/random.hpp"
#include "thrg/rule.hpp"
#include "thrg/static_decomposition.hpp"
#include "thrg/temporal_decomposition.hpp"
#include "thrg/temporal_graph.hpp"
#include "thrg/tree_decomposition.hpp"

#endif  // THRG_THRG_HPP
