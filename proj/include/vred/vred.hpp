#pragma once

// Umbrella header.

#include "vred/composite.hpp"
#include "vred/core.hpp"
#include "vred/csv.hpp"
#include "vred/detect.hpp"
#include "vred/export.hpp"
#include "vred/ingest.hpp"
#include "vred/mass.hpp"
#include "vred/pipeline.hpp"
#include "vred/stats.hpp"
#include "vred/storage.hpp"
#include "vred/version.hpp"
