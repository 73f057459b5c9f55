#pragma once

#include "fairsketch/errors.hpp"
#include "fairsketch/linalg.hpp"
#include "fairsketch/grouped.hpp"
#include "fairsketch/sketch.hpp"
#include "fairsketch/sampling.hpp"
#include "fairsketch/fair_lra.hpp"
#include "fairsketch/fair_css.hpp"
#include "fairsketch/fair_regression.hpp"
#include "fairsketch/experiments.hpp"
