#pragma once

#include <filesystem>
#include <string>

#include "zsk/methods.hpp"

namespace zsk {

inline constexpr int kModelFormatVersion = 1;

/// JSON container: {"format": "zsk-model", "version": 1, "method": ..., "state": ...}.
/// Doubles are written in shortest round-trip form, so a reloaded model
/// predicts bit-identically.
std::string serialize_model(const ZeroShotRegressor& model);

/// Throws DataError on malformed input or a version/format mismatch.
ZeroShotRegressor deserialize_model(const std::string& text);

void save_model(const ZeroShotRegressor& model, const std::filesystem::path& path);
ZeroShotRegressor load_model(const std::filesystem::path& path);

}  // namespace zsk
