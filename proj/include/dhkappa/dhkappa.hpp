#pragma once

#include "dhkappa/error.hpp"
#include "dhkappa/types.hpp"
#include "dhkappa/core_metrics.hpp"
#include "dhkappa/matrix_path.hpp"
#include "dhkappa/oracle.hpp"
#include "dhkappa/ingest.hpp"
#include "dhkappa/report.hpp"
#include "dhkappa/cli.hpp"
