/* Copyright 2026 The AANet Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "aanet/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "aanet/error.hpp"

namespace aanet {

namespace {

constexpr std::size_t kMagicLength = sizeof(kCheckpointMagic) - 1;

void put_u32(std::vector<char>& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<char>((v >> shift) & 0xFFu));
  }
}

void put_f64(std::vector<char>& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<char>((bits >> shift) & 0xFFu));
  }
}

class Reader {
 public:
  explicit Reader(const std::vector<char>& bytes) : bytes_(bytes) {}

  std::uint64_t take(std::size_t count) {
    if (pos_ + count > bytes_.size()) {
      throw DataError("checkpoint truncated at byte " + std::to_string(pos_));
    }
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < count; ++i) {
      v = (v << 8) | static_cast<unsigned char>(bytes_[pos_++]);
    }
    return v;
  }
  std::uint32_t u32() { return static_cast<std::uint32_t>(take(4)); }
  double f64() { return std::bit_cast<double>(take(8)); }
  std::string str(std::size_t count) {
    if (pos_ + count > bytes_.size()) throw DataError("checkpoint truncated");
    std::string s(bytes_.data() + pos_, count);
    pos_ += count;
    return s;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  const std::vector<char>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<char> encode_checkpoint(const std::vector<NamedTensor>& entries) {
  std::vector<char> out(kCheckpointMagic, kCheckpointMagic + kMagicLength);
  put_u32(out, static_cast<std::uint32_t>(entries.size()));
  for (const NamedTensor& e : entries) {
    put_u32(out, static_cast<std::uint32_t>(e.name.size()));
    out.insert(out.end(), e.name.begin(), e.name.end());
    const Shape& s = e.value.shape();
    put_u32(out, 4);
    for (std::size_t d : {s.n, s.c, s.h, s.w}) {
      put_u32(out, static_cast<std::uint32_t>(d));
    }
    for (double v : e.value.data()) put_f64(out, v);
  }
  return out;
}

std::vector<NamedTensor> decode_checkpoint(const std::vector<char>& bytes) {
  Reader r(bytes);
  if (r.str(kMagicLength) != std::string(kCheckpointMagic, kMagicLength)) {
    throw DataError("not a checkpoint: bad magic");
  }
  const std::uint32_t count = r.u32();
  std::vector<NamedTensor> entries;
  for (std::uint32_t i = 0; i < count; ++i) {
    NamedTensor e;
    e.name = r.str(r.u32());
    const std::uint32_t rank = r.u32();
    if (rank > 4) throw DataError("checkpoint tensor rank " + std::to_string(rank) + " > 4");
    std::size_t dims[4] = {1, 1, 1, 1};
    // Lower-rank tensors are right-aligned into NCHW.
    for (std::uint32_t d = 0; d < rank; ++d) dims[4 - rank + d] = r.u32();
    const Shape shape{dims[0], dims[1], dims[2], dims[3]};
    std::vector<double> data(shape.size());
    for (double& v : data) v = r.f64();
    e.value = Tensor(shape, std::move(data));
    entries.push_back(std::move(e));
  }
  if (!r.done()) throw DataError("checkpoint has trailing bytes");
  return entries;
}

std::vector<NamedTensor> network_state(LayerGraph& net) {
  std::vector<NamedTensor> entries;
  for (const Parameter* p : net.parameters()) entries.push_back({p->name, p->value});
  for (const Buffer* b : net.buffers()) entries.push_back({b->name, b->value});
  return entries;
}

void load_network_state(LayerGraph& net,
                        const std::vector<NamedTensor>& entries) {
  const auto& params = net.parameters();
  const auto& buffers = net.buffers();
  if (entries.size() != params.size() + buffers.size()) {
    throw DataError("checkpoint holds " + std::to_string(entries.size()) +
                    " tensors, network expects " +
                    std::to_string(params.size() + buffers.size()));
  }
  auto assign = [](const std::string& name, Tensor& dst, const NamedTensor& e) {
    if (e.name != name || e.value.shape() != dst.shape()) {
      throw DataError("checkpoint entry '" + e.name + "' " +
                      to_string(e.value.shape()) + " does not match '" + name +
                      "' " + to_string(dst.shape()));
    }
    dst = e.value;
  };
  std::size_t i = 0;
  for (Parameter* p : params) assign(p->name, p->value, entries[i++]);
  for (Buffer* b : buffers) assign(b->name, b->value, entries[i++]);
}

void save_checkpoint(const std::filesystem::path& path, LayerGraph& net) {
  const std::vector<char> bytes = encode_checkpoint(network_state(net));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write checkpoint " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

void load_checkpoint(const std::filesystem::path& path, LayerGraph& net) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read checkpoint " + path.string());
  const std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
  load_network_state(net, decode_checkpoint(bytes));
}

}  // namespace aanet
