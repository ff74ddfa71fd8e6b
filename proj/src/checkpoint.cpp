#include "rbc/checkpoint.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace rbc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_payload(const fs::path& file, const std::vector<double>& data) {
    std::vector<char> bytes(data.size() * 8);
    for (std::size_t k = 0; k < data.size(); ++k) {
        std::uint64_t u = std::bit_cast<std::uint64_t>(data[k]);
        for (int b = 0; b < 8; ++b) bytes[8 * k + b] = char((u >> (8 * b)) & 0xff);
    }
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out.write(bytes.data(), std::streamsize(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + file.string());
}

std::vector<double> read_payload(const fs::path& file, std::size_t count) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + file.string());
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() != count * 8)
        throw std::runtime_error("payload " + file.string() + " has " + std::to_string(bytes.size()) +
                                 " bytes, manifest declares " + std::to_string(count * 8));
    std::vector<double> data(count);
    for (std::size_t k = 0; k < count; ++k) {
        std::uint64_t u = 0;
        for (int b = 0; b < 8; ++b) u |= std::uint64_t(static_cast<unsigned char>(bytes[8 * k + b])) << (8 * b);
        data[k] = std::bit_cast<double>(u);
    }
    return data;
}

}  // namespace

void save_checkpoint(const fs::path& dir, const SimState& s) {
    fs::create_directories(dir);
    const Grid& g = s.grid;
    json m;
    m["H"] = g.H;
    m["Lambda"] = g.Lambda;
    m["Nx"] = g.Nx;
    m["Nz"] = g.Nz;
    m["t"] = s.t;
    m["step"] = s.step;
    m["fields"] = json::array();
    const std::pair<const char*, const PhysicalField*> fields[] = {{"theta", &s.theta}, {"v", &s.u.v}, {"w", &s.u.w}};
    for (const auto& [name, f] : fields) {
        const std::string file = std::string(name) + ".bin";
        m["fields"].push_back({{"name", name}, {"dtype", "float64"}, {"shape", {g.Nz, g.Nx}}, {"file", file}});
        write_payload(dir / file, f->data);
    }
    std::ofstream out(dir / "manifest.json", std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
    out << m.dump(2) << '\n';
}

SimState load_checkpoint(const fs::path& dir) {
    std::ifstream in(dir / "manifest.json");
    if (!in) throw std::runtime_error("no manifest.json in " + dir.string());
    json m;
    try {
        in >> m;
    } catch (const json::exception& e) {
        throw std::runtime_error("invalid manifest in " + dir.string() + ": " + e.what());
    }
    try {
        const Grid g = make_grid(m.at("H").get<double>(), m.at("Lambda").get<double>(), m.at("Nx").get<int>(),
                                 m.at("Nz").get<int>());
        SimState s{g, m.at("t").get<double>(), m.at("step").get<long>(), PhysicalField(g), VectorField{PhysicalField(g), PhysicalField(g)}};
        s.theta.bc = s.u.v.bc = s.u.w.bc = Boundary::homogeneous();
        s.theta.parity = Parity::odd;
        s.u.v.parity = Parity::even;
        s.u.w.parity = Parity::odd;
        bool seen[3] = {false, false, false};
        for (const json& f : m.at("fields")) {
            const std::string name = f.at("name");
            if (f.at("dtype") != "float64") throw std::runtime_error("unsupported dtype for " + name);
            const auto shape = f.at("shape").get<std::vector<int>>();
            if (shape != std::vector<int>{g.Nz, g.Nx}) throw std::runtime_error("shape mismatch for " + name);
            auto data = read_payload(dir / f.at("file").get<std::string>(), std::size_t(g.Nz) * g.Nx);
            int idx = name == "theta" ? 0 : name == "v" ? 1 : name == "w" ? 2 : -1;
            if (idx < 0) throw std::runtime_error("unknown field " + name);
            PhysicalField& dst = idx == 0 ? s.theta : idx == 1 ? s.u.v : s.u.w;
            dst.data = std::move(data);
            seen[idx] = true;
        }
        if (!(seen[0] && seen[1] && seen[2])) throw std::runtime_error("manifest lacks theta, v or w");
        return s;
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed manifest in " + dir.string() + ": " + e.what());
    }
}

void save_snapshots(const fs::path& dir, const std::vector<SimState>& snaps) {
    for (std::size_t k = 0; k < snaps.size(); ++k) {
        std::ostringstream name;
        name << "snap_" << std::setw(3) << std::setfill('0') << k;
        save_checkpoint(dir / name.str(), snaps[k]);
    }
}

std::vector<SimState> load_snapshots(const fs::path& dir) {
    std::vector<SimState> out;
    if (!fs::exists(dir)) return out;
    std::vector<fs::path> dirs;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_directory() && e.path().filename().string().rfind("snap_", 0) == 0) dirs.push_back(e.path());
    std::sort(dirs.begin(), dirs.end());
    for (const auto& d : dirs) out.push_back(load_checkpoint(d));
    return out;
}

}  // namespace rbc
