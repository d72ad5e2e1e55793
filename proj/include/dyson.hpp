#pragma once

// Umbrella header for the Dyson-chain decimation toolkit.

#include "dyson/checks.hpp"
#include "dyson/config.hpp"
#include "dyson/constraint.hpp"
#include "dyson/coupling.hpp"
#include "dyson/estimate.hpp"
#include "dyson/exact.hpp"
#include "dyson/fields.hpp"
#include "dyson/geometry.hpp"
#include "dyson/mcmc.hpp"
#include "dyson/observable.hpp"
#include "dyson/params.hpp"
#include "dyson/probe.hpp"
#include "dyson/report.hpp"
#include "dyson/rng.hpp"
#include "dyson/run.hpp"
#include "dyson/series.hpp"
#include "dyson/spin_window.hpp"
#include "dyson/version.hpp"
