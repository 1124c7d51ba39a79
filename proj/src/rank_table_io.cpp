#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "symrank/stratifier.hpp"

namespace symrank {

namespace {

constexpr std::array<char, 4> kMagic{'S', 'R', 'N', 'K'};
constexpr std::uint8_t kVersion = 1;

void put_u8(std::ostream& out, std::uint8_t v) { out.put(static_cast<char>(v)); }

void put_le(std::ostream& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) put_u8(out, static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(std::istream& in, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) throw std::runtime_error("rank table file is truncated");
    v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(c)) << (8 * i);
  }
  return v;
}

}  // namespace

void write_rank_table(const RankTable& table, std::ostream& out) {
  const Shape& shape = table.shape();
  out.write(kMagic.data(), kMagic.size());
  put_u8(out, kVersion);
  put_u8(out, static_cast<std::uint8_t>(shape.p()));
  put_u8(out, static_cast<std::uint8_t>(shape.n()));
  put_u8(out, static_cast<std::uint8_t>(shape.k()));
  put_le(out, shape.free_count(), 2);
  put_u8(out, static_cast<std::uint8_t>(table.max_rank()));
  put_u8(out, table.truncated() ? 1 : 0);
  const auto ranks = table.ranks();
  out.write(reinterpret_cast<const char*>(ranks.data()), static_cast<std::streamsize>(ranks.size()));
  put_le(out, table.checksum(), 8);
  if (!out) throw std::runtime_error("failed writing rank table");
}

RankTable read_rank_table(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw std::runtime_error("not a rank table file (bad magic)");
  const auto version = get_le(in, 1);
  if (version != kVersion) throw std::runtime_error("unsupported rank table version " + std::to_string(version));
  const auto p = static_cast<unsigned>(get_le(in, 1));
  const auto n = static_cast<unsigned>(get_le(in, 1));
  const auto k = static_cast<unsigned>(get_le(in, 1));
  const auto digits = get_le(in, 2);
  const auto max_rank = get_le(in, 1);
  const auto truncated = get_le(in, 1);
  if (truncated > 1) throw std::runtime_error("corrupt truncated flag");

  Shape shape(n, k, p);
  if (digits != shape.free_count()) throw std::runtime_error("header D does not match C(n+k-1,k)");
  std::vector<std::uint8_t> ranks(static_cast<std::size_t>(shape.code_space()));
  in.read(reinterpret_cast<char*>(ranks.data()), static_cast<std::streamsize>(ranks.size()));
  if (!in) throw std::runtime_error("rank table file is truncated");
  const auto stored = get_le(in, 8);
  std::uint64_t sum = 0;
  for (auto r : ranks) sum += r;
  if (sum != stored) throw std::runtime_error("rank table checksum mismatch");
  if (in.peek() != std::char_traits<char>::eof()) throw std::runtime_error("trailing bytes after rank table");

  RankTable table(std::move(shape), std::move(ranks), truncated == 1);
  if (table.max_rank() != max_rank) throw std::runtime_error("header max_rank disagrees with rank data");
  return table;
}

void save_rank_table(const RankTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_rank_table(table, out);
}

RankTable load_rank_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return read_rank_table(in);
}

}  // namespace symrank
