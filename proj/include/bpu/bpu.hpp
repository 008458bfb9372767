#pragma once

#include "bpu/plocal.hpp"
#include "bpu/matrix.hpp"
#include "bpu/polynomial.hpp"
#include "bpu/symmetric.hpp"
#include "bpu/partitions.hpp"
#include "bpu/sseq.hpp"
#include "bpu/rules.hpp"
#include "bpu/engine.hpp"
#include "bpu/report.hpp"
#include "bpu/verify.hpp"
#include "bpu/render.hpp"
