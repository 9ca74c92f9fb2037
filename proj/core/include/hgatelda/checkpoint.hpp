#pragma once

#include <string>

#include "hgatelda/classifier.hpp"
#include "hgatelda/gate.hpp"

namespace hgatelda {

/// Versioned flat text checkpoints (`hgatelda.checkpoint.v1`); values are
/// written with 17 significant digits so reload is bit-exact. The layout is
/// documented in docs/FORMATS.md.
void save_gate_model(const std::string& path, const GateModel& model);
GateModel load_gate_model(const std::string& path);

void save_classifier_model(const std::string& path, const ClassifierModel& model);
ClassifierModel load_classifier_model(const std::string& path);

}  // namespace hgatelda
