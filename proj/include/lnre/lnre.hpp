#pragma once

#include "error.hpp"
#include "quadrature.hpp"
#include "tuning.hpp"
#include "density.hpp"
#include "divergences.hpp"
#include "models.hpp"
#include "kde.hpp"
#include "genlik.hpp"
#include "sufficiency.hpp"
#include "estimators.hpp"
#include "rng.hpp"
#include "datasets.hpp"
#include "study.hpp"
