#pragma once

#include "ssm/exact.hpp"
#include "ssm/experiments.hpp"
#include "ssm/graph.hpp"
#include "ssm/identities.hpp"
#include "ssm/io.hpp"
#include "ssm/mixing.hpp"
#include "ssm/params.hpp"
#include "ssm/partition.hpp"
#include "ssm/polynomial.hpp"
#include "ssm/random.hpp"
#include "ssm/roots.hpp"
#include "ssm/saw_tree.hpp"
#include "ssm/series.hpp"
#include "ssm/tree_dp.hpp"
#include "ssm/zerofree.hpp"
