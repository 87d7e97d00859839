#pragma once

// Umbrella header for the whole toolkit.

#include "spinflow/curl_ops.hpp"
#include "spinflow/diagnostics.hpp"
#include "spinflow/errors.hpp"
#include "spinflow/fields.hpp"
#include "spinflow/generators.hpp"
#include "spinflow/identities.hpp"
#include "spinflow/io.hpp"
#include "spinflow/lattice.hpp"
#include "spinflow/products.hpp"
#include "spinflow/solver.hpp"
#include "spinflow/transforms.hpp"
