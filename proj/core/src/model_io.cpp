#include "zsk/model_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "zsk/error.hpp"

namespace zsk {
namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::vector<double>(m.data().begin(), m.data().end())}};
}

Matrix matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto data = j.at("data").get<std::vector<double>>();
  if (data.size() != rows * cols) throw DataError("model file: matrix data size mismatch");
  Matrix m(rows, cols);
  std::copy(data.begin(), data.end(), m.data().begin());
  return m;
}

json svr_to_json(const SvrModel& m) {
  return json{{"kernel", m.kernel().name()},
              {"kernel_offset", m.kernel().offset},
              {"x_dim", m.x_dim()},
              {"s_dim", m.s_dim()},
              {"bias", m.bias()},
              {"coefficients", m.dual_coeffs()},
              {"support", matrix_to_json(m.support().rows())}};
}

SvrModel svr_from_json(const json& j) {
  const auto x_dim = j.at("x_dim").get<std::size_t>();
  const auto s_dim = j.at("s_dim").get<std::size_t>();
  Matrix support = matrix_from_json(j.at("support"));
  if (support.rows() > 0 && support.cols() != x_dim + s_dim) throw DataError("model file: support width mismatch");
  if (support.rows() == 0) support = Matrix(0, x_dim + s_dim);
  return SvrModel(PointSet(std::move(support), x_dim), j.at("coefficients").get<std::vector<double>>(),
                  j.at("bias").get<double>(),
                  KernelSpec::from_name(j.at("kernel").get<std::string>(), j.at("kernel_offset").get<double>()),
                  x_dim, s_dim);
}

json models_to_json(const std::vector<SvrModel>& models) {
  json arr = json::array();
  for (const auto& m : models) arr.push_back(svr_to_json(m));
  return arr;
}

std::vector<SvrModel> models_from_json(const json& arr) {
  std::vector<SvrModel> out;
  for (const auto& j : arr) out.push_back(svr_from_json(j));
  return out;
}

}  // namespace

std::string serialize_model(const ZeroShotRegressor& model) {
  if (!model.fitted()) throw ValidationError("cannot serialize an unfitted regressor");
  json state = std::visit(
      [](const auto& st) -> json {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return json{};
        } else if constexpr (std::is_same_v<T, SingleModelState>) {
          return json{{"model", svr_to_json(st.model)}};
        } else if constexpr (std::is_same_v<T, SrState>) {
          return json{{"target_ids", st.target_ids},
                      {"target_side_info", matrix_to_json(st.target_side_info)},
                      {"target_models", models_to_json(st.target_models)}};
        } else {
          return json{{"target_ids", st.target_ids},
                      {"target_side_info", matrix_to_json(st.target_side_info)},
                      {"first_stage_parameters", matrix_to_json(st.first_stage_parameters)},
                      {"parameter_models", models_to_json(st.parameter_models)}};
        }
      },
      model.state());
  json doc{{"format", "zsk-model"},
           {"version", kModelFormatVersion},
           {"method", model.variant().name()},
           {"x_dim", model.x_dim()},
           {"s_dim", model.s_dim()},
           {"state", std::move(state)}};
  return doc.dump(1);
}

ZeroShotRegressor deserialize_model(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (doc.value("format", "") != "zsk-model") throw DataError("not a zsk model file");
    const int version = doc.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw DataError("model format version mismatch: file has " + std::to_string(version) + ", expected " +
                      std::to_string(kModelFormatVersion));
    }
    const MethodVariant variant = MethodVariant::from_name(doc.at("method").get<std::string>());
    const auto x_dim = doc.at("x_dim").get<std::size_t>();
    const auto s_dim = doc.at("s_dim").get<std::size_t>();
    const json& st = doc.at("state");
    switch (variant.kind) {
      case MethodKind::BL:
      case MethodKind::DSIL:
        return ZeroShotRegressor(variant, x_dim, s_dim, SingleModelState{svr_from_json(st.at("model"))});
      case MethodKind::SR:
        return ZeroShotRegressor(variant, x_dim, s_dim,
                                 SrState{models_from_json(st.at("target_models")),
                                         matrix_from_json(st.at("target_side_info")),
                                         st.at("target_ids").get<std::vector<std::string>>()});
      case MethodKind::MPLC:
        return ZeroShotRegressor(variant, x_dim, s_dim,
                                 MplcState{models_from_json(st.at("parameter_models")),
                                           matrix_from_json(st.at("first_stage_parameters")),
                                           matrix_from_json(st.at("target_side_info")),
                                           st.at("target_ids").get<std::vector<std::string>>()});
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed model file: ") + e.what());
  }
  throw DataError("malformed model file");
}

void save_model(const ZeroShotRegressor& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write model file: " + path.string());
  out << serialize_model(model) << '\n';
}

ZeroShotRegressor load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_model(buf.str());
}

}  // namespace zsk
