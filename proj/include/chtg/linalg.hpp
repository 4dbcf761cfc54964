#pragma once

#include "chtg/linalg/mat3.hpp"
#include "chtg/linalg/spectral.hpp"
