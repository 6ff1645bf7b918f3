#ifndef FAIR_FAIR_HPP
#define FAIR_FAIR_HPP

#include "fair/record.hpp"
#include "fair/ingest.hpp"
#include "fair/storage.hpp"
#include "fair/query.hpp"
#include "fair/engine.hpp"
#include "fair/kmeans.hpp"
#include "fair/report.hpp"
#include "fair/cli.hpp"

#endif // FAIR_FAIR_HPP
