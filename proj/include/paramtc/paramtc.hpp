#pragma once

#include "paramtc/errors.hpp"
#include "paramtc/ring.hpp"
#include "paramtc/bundle.hpp"
#include "paramtc/bounds.hpp"
#include "paramtc/planner.hpp"
#include "paramtc/verify.hpp"
