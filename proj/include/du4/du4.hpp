#pragma once

#include "du4/construct.hpp"
#include "du4/errors.hpp"
#include "du4/field.hpp"
#include "du4/io.hpp"
#include "du4/parallel.hpp"
#include "du4/permutation.hpp"
#include "du4/repro.hpp"
#include "du4/spectral.hpp"
#include "du4/subsets.hpp"
