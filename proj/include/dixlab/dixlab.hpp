#pragma once

#include "error.hpp"
#include "summation.hpp"
#include "special.hpp"
#include "weight.hpp"
#include "sequence.hpp"
#include "limits.hpp"
#include "spectral_core.hpp"
#include "trace_lab.hpp"
#include "zeta_lab.hpp"
#include "geometry.hpp"
#include "matrix_oracle.hpp"
#include "parse.hpp"
#include "report.hpp"
