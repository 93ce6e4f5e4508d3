#ifndef DPCOVER_DPCOVER_HPP
#define DPCOVER_DPCOVER_HPP

#include "dpcover/analysis.hpp"
#include "dpcover/cdcl.hpp"
#include "dpcover/cover.hpp"
#include "dpcover/density.hpp"
#include "dpcover/errors.hpp"
#include "dpcover/estimate.hpp"
#include "dpcover/experiment.hpp"
#include "dpcover/graph.hpp"
#include "dpcover/greedy.hpp"
#include "dpcover/io.hpp"
#include "dpcover/rational.hpp"
#include "dpcover/rng.hpp"
#include "dpcover/transversal.hpp"

#endif // DPCOVER_DPCOVER_HPP
