#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "mgw/moyal.hpp"

namespace mgw {

inline constexpr std::uint16_t kFieldFileVersion = 1;

enum class FieldFileErrc { Io = 1, BadMagic, VersionMismatch, TruncatedPayload, BadHeader };

class FieldFileError : public std::runtime_error {
 public:
  FieldFileError(FieldFileErrc c, const std::string& what) : std::runtime_error(what), code_(c) {}
  FieldFileErrc code() const { return code_; }

 private:
  FieldFileErrc code_;
};

struct StoredField {
  Field field;
  ThetaStructure theta;
};

// little-endian on disk whatever the host order
void save_field(const std::string& path, const Field& f, const ThetaStructure& th);
StoredField load_field(const std::string& path);

std::string encode_field(const Field& f, const ThetaStructure& th);
StoredField decode_field(const std::string& bytes);

}  // namespace mgw
