#pragma once

#include "repnet/analysis.hpp"
#include "repnet/config.hpp"
#include "repnet/dopri.hpp"
#include "repnet/dynamics.hpp"
#include "repnet/error.hpp"
#include "repnet/grid.hpp"
#include "repnet/io.hpp"
#include "repnet/linalg.hpp"
#include "repnet/model.hpp"
#include "repnet/oracle.hpp"
#include "repnet/params.hpp"
#include "repnet/presets.hpp"
#include "repnet/runner.hpp"
#include "repnet/state.hpp"
