// Copyright 2026 The fusevec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fusevec/blas.hpp"
#include "fusevec/dense_vector.hpp"
#include "fusevec/errors.hpp"
#include "fusevec/expr.hpp"
#include "fusevec/loop_engine.hpp"
#include "fusevec/simd_lanes.hpp"
