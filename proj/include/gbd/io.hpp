#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gbd/d2d.hpp"
#include "gbd/engine.hpp"
#include "gbd/ml.hpp"
#include "gbd/synthetic.hpp"

namespace gbd {

inline constexpr const char* kInstanceSchema = "gbd-instance/1";
inline constexpr const char* kModelSchema = "gbd-model/1";

// Instance files carry a schema tag and a problem-kind discriminator; key
// order and double formatting are deterministic, so identical seeds produce
// byte-identical files.
std::string d2d_to_json(const D2DInstance& inst);
std::string synthetic_to_json(const SyntheticInstance& inst);

// Parses either kind and wraps it in its Problem adapter.
std::unique_ptr<Problem> problem_from_json(const std::string& text);
D2DInstance d2d_from_json(const std::string& text);
SyntheticInstance synthetic_from_json(const std::string& text);

std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const std::string& text);

std::string dataset_to_csv(const CutDataset& dataset);
CutDataset dataset_from_csv(const std::string& text);

// Full cut log, one row per generated cut, doubles at round-trip precision.
std::string cutlog_to_csv(const CutLog& log);

// Per-iteration bounds for convergence plots.
std::string trace_to_csv(const BoundsTrace& trace);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace gbd
