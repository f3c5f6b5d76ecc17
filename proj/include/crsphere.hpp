#pragma once

#include "crsphere/asymptotics.hpp"
#include "crsphere/config.hpp"
#include "crsphere/cutoffs.hpp"
#include "crsphere/geometry.hpp"
#include "crsphere/kernel.hpp"
#include "crsphere/sobolev.hpp"
#include "crsphere/specfun.hpp"
#include "crsphere/spectrum.hpp"
#include "crsphere/strichartz.hpp"
#include "crsphere/summation.hpp"
#include "crsphere/zonal.hpp"
