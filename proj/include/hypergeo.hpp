#pragma once

#include "hypergeo/errors.hpp"
#include "hypergeo/numeric.hpp"
#include "hypergeo/special.hpp"
#include "hypergeo/jets.hpp"
#include "hypergeo/series.hpp"
#include "hypergeo/frobenius.hpp"
#include "hypergeo/connection.hpp"
#include "hypergeo/oracle.hpp"
#include "hypergeo/io.hpp"
