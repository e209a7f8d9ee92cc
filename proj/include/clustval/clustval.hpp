#pragma once

#include "clustval/errors.hpp"
#include "clustval/core.hpp"
#include "clustval/curves.hpp"
#include "clustval/cvi.hpp"
#include "clustval/classic_cvis.hpp"
#include "clustval/external_validation.hpp"
#include "clustval/kmeans.hpp"
#include "clustval/hierarchical.hpp"
#include "clustval/suite.hpp"
#include "clustval/datagen.hpp"
#include "clustval/stats.hpp"
#include "clustval/csv.hpp"
#include "clustval/harness.hpp"
#include "clustval/svg.hpp"
#include "clustval/cli.hpp"
