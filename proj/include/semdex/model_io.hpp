#pragma once

#include "semdex/model.hpp"

#include <filesystem>
#include <stdexcept>

namespace semdex::embed {

/// Raised by load_model with the failure named in what(): bad magic,
/// unsupported version, truncation, payload/header inconsistency, or
/// checksum mismatch.
class ModelFormatError : public std::runtime_error {
public:
    explicit ModelFormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Binary container: magic "SDX1", header (format + Huffman tie-break
/// versions, dim/V/D, config snapshot), vocabulary block, little-endian
/// float32 matrices, trailing CRC-32 over everything before it.
void save_model(const EmbeddingModel& model, const std::filesystem::path& path);
EmbeddingModel load_model(const std::filesystem::path& path);

} // namespace semdex::embed
