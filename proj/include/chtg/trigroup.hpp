#pragma once

#include "chtg/trigroup/group.hpp"
#include "chtg/trigroup/rows.hpp"
#include "chtg/trigroup/verify.hpp"
