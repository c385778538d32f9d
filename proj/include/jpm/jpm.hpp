#pragma once

#include "jpm/bit_vector.hpp"
#include "jpm/core.hpp"
#include "jpm/genstat.hpp"
#include "jpm/index_file.hpp"
#include "jpm/interval_index.hpp"
#include "jpm/io.hpp"
#include "jpm/jumping.hpp"
#include "jpm/prefix_table.hpp"
#include "jpm/random.hpp"
#include "jpm/wavelet_tree.hpp"
