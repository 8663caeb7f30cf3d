// Copyright 2026 The Bizfair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Model file layout (little-endian):
//
//   "BNF1" | u32 version
//   hyperparams: i32 dim, f64 lr, i32 epochs, i32 window, i32 min_count,
//                i64 bucket_count, i32 minn, i32 maxn, u64 seed
//   pipeline:    u8 mode, str placeholder, u8 strip_possessive,
//                u32 n_male, str..., u32 n_female, str...
//   labels:      u32 n, str...
//   vocab:       u32 n, (str token, u64 count)...
//   E:           u64 rows, u64 cols, f32[rows * cols] row-major
//   W:           u64 rows, u64 cols, f32[rows * cols] row-major
//
// str is a u32 byte length followed by the bytes.

#include <bit>
#include <cstring>
#include <fstream>

#include "bizfair/classifier.h"
#include "bizfair/error.h"

namespace bizfair {
namespace {

constexpr char kMagic[4] = {'B', 'N', 'F', '1'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kMaxStringBytes = 1u << 20;
constexpr std::uint64_t kMaxMatrixEntries = std::uint64_t{1} << 36;

static_assert(std::endian::native == std::endian::little ||
                  std::endian::native == std::endian::big,
              "mixed-endian platforms are not supported");

template <typename T>
T to_little(T value) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i)
      std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
    std::memcpy(&value, bytes, sizeof(T));
  }
  return value;
}

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  template <typename T>
  void put(T value) {
    value = to_little(value);
    out_.write(reinterpret_cast<const char*>(&value), sizeof(T));
  }

  void put_string(std::string_view s) {
    put(static_cast<std::uint32_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }

  void put_matrix(const RowMatrix<float>& m) {
    put(static_cast<std::uint64_t>(m.rows()));
    put(static_cast<std::uint64_t>(m.cols()));
    if constexpr (std::endian::native == std::endian::little) {
      out_.write(reinterpret_cast<const char*>(m.data()),
                 static_cast<std::streamsize>(m.size() * sizeof(float)));
    } else {
      for (Eigen::Index i = 0; i < m.size(); ++i) put(m.data()[i]);
    }
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  template <typename T>
  T get() {
    T value;
    read(reinterpret_cast<char*>(&value), sizeof(T));
    return to_little(value);
  }

  std::string get_string() {
    const auto len = get<std::uint32_t>();
    if (len > kMaxStringBytes) throw ModelFormatError("corrupt model file: bad string length");
    std::string s(len, '\0');
    read(s.data(), len);
    return s;
  }

  RowMatrix<float> get_matrix() {
    const auto rows = get<std::uint64_t>();
    const auto cols = get<std::uint64_t>();
    if (rows == 0 || cols == 0 || rows > kMaxMatrixEntries / cols) {
      throw ModelFormatError("corrupt model file: bad matrix shape");
    }
    RowMatrix<float> m(static_cast<Eigen::Index>(rows),
                       static_cast<Eigen::Index>(cols));
    read(reinterpret_cast<char*>(m.data()), m.size() * sizeof(float));
    if constexpr (std::endian::native == std::endian::big) {
      for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = to_little(m.data()[i]);
    }
    return m;
  }

  void read(char* dst, std::size_t n) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw ModelFormatError("truncated model file");
    }
  }

 private:
  std::istream& in_;
};

}  // namespace

void save(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write model " + path.string());
  Writer w(out);
  out.write(kMagic, sizeof(kMagic));
  w.put(kVersion);

  const Hyperparams& hp = model.hp;
  w.put(static_cast<std::int32_t>(hp.dim));
  w.put(hp.lr);
  w.put(static_cast<std::int32_t>(hp.epochs));
  w.put(static_cast<std::int32_t>(hp.window));
  w.put(static_cast<std::int32_t>(hp.min_count));
  w.put(static_cast<std::int64_t>(hp.bucket_count));
  w.put(static_cast<std::int32_t>(hp.minn));
  w.put(static_cast<std::int32_t>(hp.maxn));
  w.put(hp.seed);

  w.put(static_cast<std::uint8_t>(model.mode));
  w.put_string(model.mask_policy.placeholder);
  w.put(static_cast<std::uint8_t>(model.mask_policy.strip_possessive));
  for (const auto* names : {&model.lexicon.male(), &model.lexicon.female()}) {
    w.put(static_cast<std::uint32_t>(names->size()));
    for (const std::string& name : *names) w.put_string(name);
  }

  w.put(static_cast<std::uint32_t>(model.labels.size()));
  for (const std::string& label : model.labels) w.put_string(label);

  w.put(static_cast<std::uint32_t>(model.vocab.size()));
  for (std::size_t i = 0; i < model.vocab.size(); ++i) {
    const auto id = static_cast<std::int32_t>(i);
    w.put_string(model.vocab.token(id));
    w.put(model.vocab.count(id));
  }

  w.put_matrix(model.params.input);
  w.put_matrix(model.params.output);
  if (!out) throw DataError("error writing model " + path.string());
}

Model load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read model " + path.string());
  Reader r(in);

  char magic[4] = {};
  in.read(magic, sizeof(magic));
  if (in.gcount() != sizeof(magic) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw ModelFormatError(path.string() + " is not a model file");
  }
  if (const auto version = r.get<std::uint32_t>(); version != kVersion) {
    throw ModelFormatError("unsupported model file version " + std::to_string(version));
  }

  Model model;
  Hyperparams& hp = model.hp;
  hp.dim = r.get<std::int32_t>();
  hp.lr = r.get<double>();
  hp.epochs = r.get<std::int32_t>();
  hp.window = r.get<std::int32_t>();
  hp.min_count = r.get<std::int32_t>();
  hp.bucket_count = r.get<std::int64_t>();
  hp.minn = r.get<std::int32_t>();
  hp.maxn = r.get<std::int32_t>();
  hp.seed = r.get<std::uint64_t>();

  const auto mode = r.get<std::uint8_t>();
  if (mode > static_cast<std::uint8_t>(TrainingMode::kAugment)) {
    throw ModelFormatError("corrupt model file: bad training mode");
  }
  model.mode = static_cast<TrainingMode>(mode);
  model.mask_policy.placeholder = r.get_string();
  model.mask_policy.strip_possessive = r.get<std::uint8_t>() != 0;
  for (Gender g : {Gender::kMale, Gender::kFemale}) {
    const auto n = r.get<std::uint32_t>();
    for (std::uint32_t i = 0; i < n; ++i) model.lexicon.add(r.get_string(), g);
  }

  const auto n_labels = r.get<std::uint32_t>();
  for (std::uint32_t i = 0; i < n_labels; ++i) model.labels.push_back(r.get_string());

  const auto n_vocab = r.get<std::uint32_t>();
  for (std::uint32_t i = 0; i < n_vocab; ++i) {
    std::string token = r.get_string();
    model.vocab.add(token, r.get<std::uint64_t>());
  }

  model.params.input = r.get_matrix();
  model.params.output = r.get_matrix();

  const auto expected_rows = static_cast<Eigen::Index>(model.vocab.size()) +
                             (hp.subwords() ? hp.bucket_count : 0);
  if (model.params.input.rows() != expected_rows ||
      model.params.input.cols() != hp.dim ||
      model.params.output.rows() != static_cast<Eigen::Index>(model.labels.size()) ||
      model.params.output.cols() != hp.dim) {
    throw ModelFormatError("corrupt model file: matrix shapes do not match header");
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw ModelFormatError("corrupt model file: trailing bytes");
  }
  return model;
}

}  // namespace bizfair
