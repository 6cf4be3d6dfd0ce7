#pragma once

#include "farey/backend.hpp"
#include "farey/checkpoint.hpp"
#include "farey/fraction.hpp"
#include "farey/lineage.hpp"
#include "farey/parallel_fold.hpp"
#include "farey/rational.hpp"
#include "farey/report.hpp"
#include "farey/statistics.hpp"
#include "farey/summation.hpp"
#include "farey/tree.hpp"
#include "farey/verification.hpp"
