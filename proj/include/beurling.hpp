#pragma once

#include "beurling/error.hpp"
#include "beurling/weights.hpp"
#include "beurling/series.hpp"
#include "beurling/algebra.hpp"
#include "beurling/wiener.hpp"
#include "beurling/levy.hpp"
#include "beurling/io.hpp"
#include "beurling/remarks.hpp"
