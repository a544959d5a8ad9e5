#pragma once

#include "covtop/classify.hpp"
#include "covtop/cover.hpp"
#include "covtop/degree.hpp"
#include "covtop/errors.hpp"
#include "covtop/homology.hpp"
#include "covtop/io.hpp"
#include "covtop/kkm.hpp"
#include "covtop/linalg.hpp"
#include "covtop/linking.hpp"
#include "covtop/preimage.hpp"
#include "covtop/pseudomanifold.hpp"
#include "covtop/rational.hpp"
#include "covtop/realization.hpp"
#include "covtop/simplicial_complex.hpp"
#include "covtop/subdivision.hpp"
