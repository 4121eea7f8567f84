#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cheshire/interferometer.hpp"
#include "cheshire/pointer.hpp"
#include "cheshire/verify.hpp"

namespace cheshire {

enum class OutputFormat { markdown, json, csv };

OutputFormat parse_format(std::string_view text);

/// Amplitudes as exact strings in the normative index order, with float
/// renderings alongside.
std::string render_state(const NamedState& state, OutputFormat format);

/// 16x16 matrix (or the reduced action table under appendix_oracle) as exact
/// strings in the normative order.
std::string render_operator(OperatorKind kind, const ArmSelector& arms, Convention conv,
                            OutputFormat format);

std::string render_report(const WeakValueReport& report, OutputFormat format);

std::string render_manifest(const VerificationManifest& manifest, OutputFormat format);

std::string render_sweep(const std::vector<SweepRow>& rows, double target, bool as_json);

std::string render_clicks(const ClickStatistics& stats, OutputFormat format);

std::string render_conditioned(const ConditionedState& cond, OutputFormat format);

std::string render_hwp_search(const HwpSearchResult& result, OutputFormat format);

std::string render_synthesis(const SynthesisResult& result, OutputFormat format);

}  // namespace cheshire
