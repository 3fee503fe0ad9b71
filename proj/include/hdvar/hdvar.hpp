#pragma once

#include "hdvar/bayes_test.hpp"
#include "hdvar/csv.hpp"
#include "hdvar/dataset_io.hpp"
#include "hdvar/error.hpp"
#include "hdvar/estimators.hpp"
#include "hdvar/harness.hpp"
#include "hdvar/histogram.hpp"
#include "hdvar/linalg.hpp"
#include "hdvar/model.hpp"
#include "hdvar/parallel.hpp"
#include "hdvar/records.hpp"
#include "hdvar/rng.hpp"
#include "hdvar/svg.hpp"
#include "hdvar/table1.hpp"

#define HDVAR_VERSION "0.1.0"
