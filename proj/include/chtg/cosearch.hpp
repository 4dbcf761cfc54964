#pragma once

#include "chtg/cosearch/identities.hpp"
#include "chtg/cosearch/residuals.hpp"
#include "chtg/cosearch/search.hpp"
