#include "linkgen/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "linkgen/errors.hpp"

namespace linkgen {
namespace {

using nlohmann::json;

constexpr char kMagic[4] = {'L', 'G', 'C', 'K'};

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double d) {
  put_u64(out, std::bit_cast<std::uint64_t>(d));
}

struct Reader {
  const std::string& data;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (pos + n > data.size())
      throw FormatError("checkpoint: truncated file");
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= std::uint32_t(std::uint8_t(data[pos++])) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= std::uint64_t(std::uint8_t(data[pos++])) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
};

void append_tensor(std::string& blob, json& table, const std::string& name,
                   const Eigen::MatrixXd& t) {
  table.push_back({{"name", name},
                   {"rows", t.rows()},
                   {"cols", t.cols()}});
  for (Eigen::Index c = 0; c < t.cols(); ++c)
    for (Eigen::Index r = 0; r < t.rows(); ++r) put_f64(blob, t(r, c));
}

Eigen::MatrixXd read_tensor(Reader& rd, const json& entry) {
  const Eigen::Index rows = entry.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = entry.at("cols").get<Eigen::Index>();
  if (rows < 0 || cols < 0) throw FormatError("checkpoint: negative shape");
  Eigen::MatrixXd t(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) t(r, c) = rd.f64();
  if (!t.allFinite()) throw FormatError("checkpoint: non-finite tensor value");
  return t;
}

}  // namespace

void save_checkpoint(const DenoiserCheckpoint& ckpt,
                     const std::filesystem::path& path) {
  const std::size_t layers = ckpt.net.weights.size();
  json header;
  header["arch"] = {{"input_dim", ckpt.net.arch.input_dim},
                    {"hidden_dims", ckpt.net.arch.hidden_dims},
                    {"output_dim", ckpt.net.arch.output_dim},
                    {"activation", to_string(ckpt.net.arch.activation)}};
  header["adam"] = {{"learning_rate", ckpt.opt.learning_rate},
                    {"beta1", ckpt.opt.beta1},
                    {"beta2", ckpt.opt.beta2},
                    {"epsilon", ckpt.opt.epsilon},
                    {"step", ckpt.opt.step}};
  header["train_step"] = ckpt.train_step;
  header["master_seed"] = ckpt.master_seed;

  json table = json::array();
  std::string blob;
  for (std::size_t l = 0; l < layers; ++l) {
    const std::string idx = std::to_string(l);
    append_tensor(blob, table, "w" + idx, ckpt.net.weights[l]);
    append_tensor(blob, table, "b" + idx, ckpt.net.biases[l]);
    append_tensor(blob, table, "adam_m_w" + idx, ckpt.opt.m_weights[l]);
    append_tensor(blob, table, "adam_v_w" + idx, ckpt.opt.v_weights[l]);
    append_tensor(blob, table, "adam_m_b" + idx, ckpt.opt.m_biases[l]);
    append_tensor(blob, table, "adam_v_b" + idx, ckpt.opt.v_biases[l]);
  }
  header["tensors"] = std::move(table);

  const std::string header_text = header.dump();
  std::string out;
  out.append(kMagic, 4);
  put_u32(out, kCheckpointVersion);
  put_u64(out, header_text.size());
  out += header_text;
  out += blob;

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw FormatError("checkpoint: cannot open for writing: " +
                               path.string());
  file.write(out.data(), std::streamsize(out.size()));
  if (!file) throw FormatError("checkpoint: write failed: " + path.string());
}

DenoiserCheckpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw FormatError("checkpoint: cannot open: " + path.string());
  std::string data((std::istreambuf_iterator<char>(file)),
                   std::istreambuf_iterator<char>());

  Reader rd{data};
  rd.need(4);
  if (std::memcmp(data.data(), kMagic, 4) != 0)
    throw FormatError("checkpoint: bad magic");
  rd.pos = 4;
  const std::uint32_t version = rd.u32();
  if (version != kCheckpointVersion)
    throw VersionError("checkpoint: unsupported version " +
                       std::to_string(version));
  const std::uint64_t header_len = rd.u64();
  rd.need(header_len);
  json header;
  try {
    header = json::parse(data.substr(rd.pos, header_len));
  } catch (const json::exception& e) {
    throw FormatError(std::string("checkpoint: bad header: ") + e.what());
  }
  rd.pos += header_len;

  DenoiserCheckpoint ckpt;
  try {
    const json& arch = header.at("arch");
    ckpt.net.arch.input_dim = arch.at("input_dim").get<int>();
    ckpt.net.arch.hidden_dims = arch.at("hidden_dims").get<std::vector<int>>();
    ckpt.net.arch.output_dim = arch.at("output_dim").get<int>();
    ckpt.net.arch.activation =
        activation_from_string(arch.at("activation").get<std::string>());
    const json& adam = header.at("adam");
    ckpt.opt.learning_rate = adam.at("learning_rate").get<double>();
    ckpt.opt.beta1 = adam.at("beta1").get<double>();
    ckpt.opt.beta2 = adam.at("beta2").get<double>();
    ckpt.opt.epsilon = adam.at("epsilon").get<double>();
    ckpt.opt.step = adam.at("step").get<std::int64_t>();
    ckpt.train_step = header.at("train_step").get<std::int64_t>();
    ckpt.master_seed = header.at("master_seed").get<std::uint64_t>();

    const auto dims = ckpt.net.arch.layer_dims();
    const json& table = header.at("tensors");
    if (table.size() != 6 * (dims.size() - 1))
      throw FormatError("checkpoint: unexpected tensor count");
    std::size_t entry = 0;
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
      auto expect = [&](const std::string& name, Eigen::Index rows,
                        Eigen::Index cols) {
        const json& e = table.at(entry++);
        if (e.at("name").get<std::string>() != name)
          throw FormatError("checkpoint: tensor order mismatch at " + name);
        Eigen::MatrixXd t = read_tensor(rd, e);
        if (t.rows() != rows || t.cols() != cols)
          throw FormatError("checkpoint: shape mismatch for " + name);
        return t;
      };
      const std::string idx = std::to_string(l);
      const Eigen::Index rows = dims[l + 1], cols = dims[l];
      ckpt.net.weights.push_back(expect("w" + idx, rows, cols));
      ckpt.net.biases.push_back(expect("b" + idx, rows, 1));
      ckpt.opt.m_weights.push_back(expect("adam_m_w" + idx, rows, cols));
      ckpt.opt.v_weights.push_back(expect("adam_v_w" + idx, rows, cols));
      ckpt.opt.m_biases.push_back(expect("adam_m_b" + idx, rows, 1));
      ckpt.opt.v_biases.push_back(expect("adam_v_b" + idx, rows, 1));
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("checkpoint: bad header field: ") +
                      e.what());
  }
  if (rd.pos != data.size())
    throw FormatError("checkpoint: trailing bytes");
  return ckpt;
}

}  // namespace linkgen
