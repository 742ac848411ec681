#include "mgw/field_file.hpp"

#include <bit>
#include <fstream>
#include <iterator>
#include <sstream>

namespace mgw {
namespace {

constexpr char kMagic[4] = {'M', 'G', 'W', 'F'};

template <class U>
void put(std::string& out, U v) {
  for (std::size_t i = 0; i < sizeof(U); ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_f64(std::string& out, double v) { put(out, std::bit_cast<std::uint64_t>(v)); }

class Reader {
 public:
  explicit Reader(const std::string& s) : s_(s) {}
  template <class U>
  U get(FieldFileErrc on_short, const char* what) {
    if (s_.size() - pos_ < sizeof(U)) throw FieldFileError(on_short, std::string("short read: ") + what);
    U v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i)
      v |= static_cast<U>(static_cast<unsigned char>(s_[pos_ + i])) << (8 * i);
    pos_ += sizeof(U);
    return v;
  }
  double f64(FieldFileErrc on_short, const char* what) {
    return std::bit_cast<double>(get<std::uint64_t>(on_short, what));
  }
  std::size_t remaining() const { return s_.size() - pos_; }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_field(const Field& f, const ThetaStructure& th) {
  const Lattice& lat = f.lattice();
  if (th.dim() != lat.dim()) throw PreconditionError("theta dimension mismatch");
  std::string out(kMagic, 4);
  put<std::uint16_t>(out, kFieldFileVersion);
  put<std::uint16_t>(out, static_cast<std::uint16_t>(lat.dim()));
  for (int mu = 0; mu < lat.dim(); ++mu) put<std::uint32_t>(out, static_cast<std::uint32_t>(lat.n(mu)));
  for (int mu = 0; mu < lat.dim(); ++mu) put_f64(out, lat.length(mu));
  for (double t : th.block_thetas()) put_f64(out, t);
  out.reserve(out.size() + 16 * f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    put_f64(out, f[i].real());
    put_f64(out, f[i].imag());
  }
  return out;
}

StoredField decode_field(const std::string& bytes) {
  if (bytes.size() < 4 || bytes.compare(0, 4, kMagic, 4) != 0)
    throw FieldFileError(FieldFileErrc::BadMagic, "bad magic: not a field file");
  Reader r(bytes);
  r.get<std::uint32_t>(FieldFileErrc::BadMagic, "magic");
  const auto version = r.get<std::uint16_t>(FieldFileErrc::BadHeader, "version");
  if (version != kFieldFileVersion)
    throw FieldFileError(FieldFileErrc::VersionMismatch,
                         "version mismatch: file has " + std::to_string(version) + ", expected " +
                             std::to_string(kFieldFileVersion));
  const int D = r.get<std::uint16_t>(FieldFileErrc::BadHeader, "dimension");
  if (D < 1) throw FieldFileError(FieldFileErrc::BadHeader, "dimension must be positive");
  std::vector<int> N(D);
  std::vector<double> L(D), th(D / 2);
  for (auto& n : N) n = static_cast<int>(r.get<std::uint32_t>(FieldFileErrc::BadHeader, "axis size"));
  for (auto& l : L) l = r.f64(FieldFileErrc::BadHeader, "axis length");
  for (auto& t : th) t = r.f64(FieldFileErrc::BadHeader, "theta");
  Lattice lat;
  ThetaStructure theta;
  try {
    lat = Lattice::make(D, N, L);
    theta = ThetaStructure(D, th);
  } catch (const PreconditionError& e) {
    throw FieldFileError(FieldFileErrc::BadHeader, std::string("bad header: ") + e.what());
  }
  if (r.remaining() < 16 * lat.size())
    throw FieldFileError(FieldFileErrc::TruncatedPayload,
                         "truncated payload: " + std::to_string(r.remaining()) + " of " +
                             std::to_string(16 * lat.size()) + " bytes");
  if (r.remaining() > 16 * lat.size())
    throw FieldFileError(FieldFileErrc::BadHeader, "trailing bytes after payload");
  Field f(lat);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double re = r.f64(FieldFileErrc::TruncatedPayload, "payload");
    const double im = r.f64(FieldFileErrc::TruncatedPayload, "payload");
    f[i] = {re, im};
  }
  return {std::move(f), theta};
}

void save_field(const std::string& path, const Field& f, const ThetaStructure& th) {
  const std::string bytes = encode_field(f, th);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FieldFileError(FieldFileErrc::Io, "cannot open " + path + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FieldFileError(FieldFileErrc::Io, "write failed: " + path);
}

StoredField load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FieldFileError(FieldFileErrc::Io, "cannot open " + path);
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_field(bytes);
}

}  // namespace mgw
