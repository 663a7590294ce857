// Copyright (c) 2026 The monoqt developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "monoqt/complex_matrix.hpp"
#include "monoqt/config.hpp"
#include "monoqt/emit.hpp"
#include "monoqt/hermitian_eigen.hpp"
#include "monoqt/measures.hpp"
#include "monoqt/monogamy.hpp"
#include "monoqt/named_states.hpp"
#include "monoqt/rng.hpp"
#include "monoqt/samplers.hpp"
#include "monoqt/states.hpp"
#include "monoqt/teleport.hpp"
