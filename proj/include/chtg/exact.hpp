#pragma once

#include "chtg/exact/angle.hpp"
#include "chtg/exact/cyclotomic.hpp"
#include "chtg/exact/real.hpp"
#include "chtg/exact/trig.hpp"
