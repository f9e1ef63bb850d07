#pragma once

#include <filesystem>
#include <iosfwd>

#include "hopeedi/ensemble.h"
#include "hopeedi/learn.h"

namespace hopeedi {

// Line-oriented decimal text. Doubles are written with 17 significant digits,
// so reading a written model gives back identical parameters.
void write_model(std::ostream& out, const TrainedModel& model);
TrainedModel read_model(std::istream& in);

// An ensemble file is a header (generator, member count, seeds, split
// fraction, tie-break) followed by one model block per member.
void write_ensemble(std::ostream& out, const Ensemble& ensemble);
Ensemble read_ensemble(std::istream& in);

void save_ensemble(const std::filesystem::path& path, const Ensemble& ensemble);
Ensemble load_ensemble(const std::filesystem::path& path);

}  // namespace hopeedi
