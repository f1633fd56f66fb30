#include "dictlearn/io/dictionary_file.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "dictlearn/errors.hpp"
#include "dictlearn/io/files.hpp"

namespace dictlearn::io {
namespace {

constexpr char kMagic[5] = {'O', 'N', 'M', 'F', '1'};
constexpr std::size_t kHeaderSize = 5 + 4 + 8 + 8 + 8 + 8;

class Writer {
 public:
  explicit Writer(std::size_t capacity) { bytes_.reserve(capacity); }

  template <typename UInt>
  void put_uint(UInt v) {
    for (std::size_t i = 0; i < sizeof(UInt); ++i)
      bytes_.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xFF));
  }
  void put_f64(double v) { put_uint(std::bit_cast<std::uint64_t>(v)); }
  void put_row_major(const Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) put_f64(m(i, j));
  }
  void put_raw(const char* data, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) bytes_.push_back(static_cast<std::byte>(data[i]));
  }

  std::vector<std::byte> take() { return std::move(bytes_); }

 private:
  std::vector<std::byte> bytes_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::byte> bytes) : bytes_(bytes) {}

  template <typename UInt>
  UInt get_uint() {
    UInt v = 0;
    for (std::size_t i = 0; i < sizeof(UInt); ++i)
      v |= static_cast<UInt>(std::to_integer<std::uint8_t>(bytes_[pos_ + i])) << (8 * i);
    pos_ += sizeof(UInt);
    return v;
  }
  double get_f64() { return std::bit_cast<double>(get_uint<std::uint64_t>()); }
  Matrix get_row_major(Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = get_f64();
    return m;
  }

 private:
  std::span<const std::byte> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::byte> encode_dictionary(const OnlineDictionaryState& state) {
  const auto d = static_cast<std::uint64_t>(state.dim());
  const auto r = static_cast<std::uint64_t>(state.rank());
  require_shape(state.A, state.rank(), state.rank(), "aggregate A");
  require_shape(state.B, state.rank(), state.dim(), "aggregate B");

  Writer w(kHeaderSize + 8 * (2 * d * r + r * r));
  w.put_raw(kMagic, sizeof kMagic);
  w.put_uint(kDictionaryFormatVersion);
  w.put_uint(d);
  w.put_uint(r);
  w.put_uint(static_cast<std::uint64_t>(state.t));
  w.put_f64(state.lambda);
  w.put_row_major(state.W);
  w.put_row_major(state.A);
  w.put_row_major(state.B);
  return w.take();
}

OnlineDictionaryState decode_dictionary(std::span<const std::byte> bytes) {
  if (bytes.size() < kHeaderSize) throw FormatError("dictionary file is shorter than its header");
  if (!std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin(),
                  [](char c, std::byte b) { return static_cast<std::byte>(c) == b; }))
    throw FormatError("dictionary file has a bad magic number");

  Reader in(bytes.subspan(5));
  const auto version = in.get_uint<std::uint32_t>();
  if (version != kDictionaryFormatVersion)
    throw FormatError("unsupported dictionary format version " + std::to_string(version));
  const auto d = in.get_uint<std::uint64_t>();
  const auto r = in.get_uint<std::uint64_t>();
  const auto t = in.get_uint<std::uint64_t>();
  const double lambda = in.get_f64();

  // Guard the multiplication below against absurd headers.
  constexpr std::uint64_t kMaxDim = std::uint64_t{1} << 28;
  if (d > kMaxDim || r > kMaxDim)
    throw FormatError("dictionary header dimensions are implausibly large");
  const std::uint64_t expected = kHeaderSize + 8 * (2 * d * r + r * r);
  if (bytes.size() != expected) {
    throw FormatError("dictionary payload is " + std::to_string(bytes.size()) +
                      " bytes, header implies " + std::to_string(expected));
  }

  OnlineDictionaryState state;
  const auto rows = static_cast<Eigen::Index>(d);
  const auto rank = static_cast<Eigen::Index>(r);
  state.t = t;
  state.lambda = lambda;
  state.W = in.get_row_major(rows, rank);
  state.A = in.get_row_major(rank, rank);
  state.B = in.get_row_major(rank, rows);
  return state;
}

void write_dictionary(const std::filesystem::path& path, const OnlineDictionaryState& state) {
  write_file_atomic(path, encode_dictionary(state));
}

OnlineDictionaryState read_dictionary(const std::filesystem::path& path) {
  return decode_dictionary(read_file(path));
}

}  // namespace dictlearn::io
