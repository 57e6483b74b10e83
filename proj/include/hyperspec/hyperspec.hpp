#pragma once

#include "hyperspec/analysis.hpp"
#include "hyperspec/eigen_system.hpp"
#include "hyperspec/error.hpp"
#include "hyperspec/homotopy.hpp"
#include "hyperspec/hypergraph.hpp"
#include "hyperspec/io.hpp"
#include "hyperspec/matrix_oracle.hpp"
#include "hyperspec/perron.hpp"
#include "hyperspec/polynomial.hpp"
#include "hyperspec/rational.hpp"
#include "hyperspec/spectrum.hpp"
#include "hyperspec/stirling.hpp"
#include "hyperspec/tensor.hpp"
