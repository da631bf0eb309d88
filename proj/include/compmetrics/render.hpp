#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "compmetrics/metrics.hpp"
#include "compmetrics/reconfigurator.hpp"
#include "compmetrics/reuse_registry.hpp"

namespace compmetrics {

enum class RenderFormat { table, structured, csv };

std::optional<RenderFormat> parse_format(std::string_view text);

/// Three sections (components, classes, methods). The method section carries
/// the decisions+1 vs E-V+1 comparison: `agree`, `disagree`, or `-` when the
/// method has no CFG. csv sections are separated by a blank line; the first
/// section's columns are component,wcm,dit,cbom.
std::string render_report(const MetricsReport& report, RenderFormat format);

std::string render_ledger(const ReuseLedger& ledger, RenderFormat format);
std::string render_victims(const VictimList& victims, RenderFormat format);
std::string render_plan(const PartitionPlan& plan, const PartitionEvaluation& eval,
                        RenderFormat format);

}  // namespace compmetrics
