#pragma once

#include "chtg/reports/emit.hpp"
#include "chtg/reports/registry.hpp"
#include "chtg/reports/scan.hpp"
