#pragma once

#include "lastmile/anneal.hpp"
#include "lastmile/baseline.hpp"
#include "lastmile/cost.hpp"
#include "lastmile/errors.hpp"
#include "lastmile/geometry.hpp"
#include "lastmile/io.hpp"
#include "lastmile/model.hpp"
#include "lastmile/oracle.hpp"
#include "lastmile/random.hpp"
#include "lastmile/report.hpp"
#include "lastmile/svg.hpp"
