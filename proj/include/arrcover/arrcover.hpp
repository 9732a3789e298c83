#pragma once

#include "field.hpp"
#include "matrix.hpp"
#include "arrangement.hpp"
#include "poset.hpp"
#include "os_aomoto.hpp"
#include "covers_milnor.hpp"
#include "catalog.hpp"
