#include "fielde/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "fielde/errors.hpp"

namespace fielde {

namespace {

constexpr char kMagic[4] = {'F', 'L', 'D', 'E'};

template <typename T>
void put(std::ostream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in, const std::string& path) {
    T value;
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw CheckpointError("truncated checkpoint: " + path);
    return value;
}

void put_vec(std::ostream& out, const Vec& v) {
    put<std::uint64_t>(out, v.size());
    out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
}

Vec get_vec(std::istream& in, const std::string& path) {
    const auto n = get<std::uint64_t>(in, path);
    Vec v(n);
    in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(double)));
    if (!in) throw CheckpointError("truncated checkpoint: " + path);
    return v;
}

void put_mat(std::ostream& out, const Mat& m) {
    put<std::uint64_t>(out, m.rows);
    put<std::uint64_t>(out, m.cols);
    out.write(reinterpret_cast<const char*>(m.data.data()),
              static_cast<std::streamsize>(m.data.size() * sizeof(double)));
}

Mat get_mat(std::istream& in, const std::string& path) {
    const auto rows = get<std::uint64_t>(in, path);
    const auto cols = get<std::uint64_t>(in, path);
    Mat m(rows, cols);
    in.read(reinterpret_cast<char*>(m.data.data()),
            static_cast<std::streamsize>(m.data.size() * sizeof(double)));
    if (!in) throw CheckpointError("truncated checkpoint: " + path);
    return m;
}

void put_field(std::ostream& out, const RelationField& f) {
    put<std::uint8_t>(out, static_cast<std::uint8_t>(f.kind));
    switch (f.kind) {
        case FieldKind::constant: put_vec(out, f.r_vec); break;
        case FieldKind::linear: put_mat(out, f.lin); break;
        case FieldKind::rotation: put_vec(out, f.phases); break;
        case FieldKind::neural:
            put<std::uint8_t>(out, static_cast<std::uint8_t>(f.net.act));
            put<std::uint32_t>(out, static_cast<std::uint32_t>(f.net.weights.size()));
            for (std::size_t l = 0; l < f.net.weights.size(); ++l) {
                put_mat(out, f.net.weights[l]);
                put_vec(out, f.net.biases[l]);
            }
            put_mat(out, f.net.output);
            break;
    }
}

RelationField get_field(std::istream& in, int dim, const std::string& path) {
    const auto kind_raw = get<std::uint8_t>(in, path);
    if (kind_raw > static_cast<std::uint8_t>(FieldKind::neural))
        throw CheckpointError("corrupt checkpoint (bad field kind): " + path);
    RelationField f;
    f.kind = static_cast<FieldKind>(kind_raw);
    f.dim = dim;
    switch (f.kind) {
        case FieldKind::constant: f.r_vec = get_vec(in, path); break;
        case FieldKind::linear: f.lin = get_mat(in, path); break;
        case FieldKind::rotation: f.phases = get_vec(in, path); break;
        case FieldKind::neural: {
            const auto act_raw = get<std::uint8_t>(in, path);
            if (act_raw > static_cast<std::uint8_t>(Activation::identity))
                throw CheckpointError("corrupt checkpoint (bad activation): " + path);
            f.net.act = static_cast<Activation>(act_raw);
            const auto layers = get<std::uint32_t>(in, path);
            for (std::uint32_t l = 0; l < layers; ++l) {
                f.net.weights.push_back(get_mat(in, path));
                f.net.biases.push_back(get_vec(in, path));
            }
            f.net.output = get_mat(in, path);
            break;
        }
    }
    return f;
}

}  // namespace

void save_checkpoint(const ModelState& state, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write checkpoint: " + path);
    out.write(kMagic, 4);
    put<std::uint32_t>(out, kCheckpointVersion);
    put<std::uint8_t>(out, static_cast<std::uint8_t>(state.variant));
    put<double>(out, state.step.eta);
    put<double>(out, state.step.lambda);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(state.dim));
    put<std::uint64_t>(out, static_cast<std::uint64_t>(state.num_entities()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(state.fields.size()));
    out.write(reinterpret_cast<const char*>(state.entities.data()),
              static_cast<std::streamsize>(state.entities.size() * sizeof(double)));
    for (const RelationField& f : state.fields) put_field(out, f);
    if (!out) throw IoError("failed writing checkpoint: " + path);
}

ModelState load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CheckpointError("cannot open checkpoint: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw CheckpointError("corrupt checkpoint (bad magic): " + path);
    const auto version = get<std::uint32_t>(in, path);
    if (version != kCheckpointVersion)
        throw CheckpointError("unsupported checkpoint version " + std::to_string(version) + ": " + path);

    ModelState state;
    const auto variant_raw = get<std::uint8_t>(in, path);
    if (variant_raw > 1) throw CheckpointError("corrupt checkpoint (bad variant): " + path);
    state.variant = static_cast<Variant>(variant_raw);
    state.step.eta = get<double>(in, path);
    state.step.lambda = get<double>(in, path);
    state.dim = static_cast<int>(get<std::uint32_t>(in, path));
    const auto num_entities = get<std::uint64_t>(in, path);
    const auto num_relations = get<std::uint32_t>(in, path);
    state.entities.resize(num_entities * static_cast<std::uint64_t>(state.dim));
    in.read(reinterpret_cast<char*>(state.entities.data()),
            static_cast<std::streamsize>(state.entities.size() * sizeof(double)));
    if (!in) throw CheckpointError("truncated checkpoint: " + path);
    state.fields.reserve(num_relations);
    for (std::uint32_t r = 0; r < num_relations; ++r) state.fields.push_back(get_field(in, state.dim, path));
    return state;
}

}  // namespace fielde
