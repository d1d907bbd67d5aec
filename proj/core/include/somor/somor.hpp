#pragma once

#include "somor/analysis.hpp"
#include "somor/csv.hpp"
#include "somor/errors.hpp"
#include "somor/gramians.hpp"
#include "somor/key_value_file.hpp"
#include "somor/manifest.hpp"
#include "somor/matrix_kernels.hpp"
#include "somor/matrix_market.hpp"
#include "somor/msd.hpp"
#include "somor/parallel.hpp"
#include "somor/reduction.hpp"
#include "somor/rom_io.hpp"
#include "somor/second_order_system.hpp"
#include "somor/simulate.hpp"
#include "somor/types.hpp"
