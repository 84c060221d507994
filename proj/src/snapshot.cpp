#include "cmhd/snapshot.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>

namespace cmhd {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void require_token(std::istream& in, const std::string& expected, const std::string& path) {
    std::string tok;
    in >> tok;
    if (tok != expected)
        throw std::runtime_error("snapshot " + path + ": expected '" + expected + "', got '" +
                                 tok + "'");
}

} // namespace

void write_field(const std::filesystem::path& path, const std::string& name,
                 const ScalarField& field, double time) {
    if (name.empty() || name.find_first_of(" \t\n") != std::string::npos)
        throw std::invalid_argument("write_field: name must be a nonempty token");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_field: cannot open " + path.string());
    const Grid& g = field.grid;
    out << "CMHD-FIELD 1\n";
    out << "name " << name << "\n";
    out << "grid " << g.nx << " " << g.ny << " " << g.nz << "\n";
    out << "box " << format_double(g.lx) << " " << format_double(g.ly) << " "
        << format_double(g.lz) << "\n";
    out << "time " << format_double(time) << "\n";
    out << "data float64 little-endian " << field.values.size() << "\n";
    out.write(reinterpret_cast<const char*>(field.values.data()),
              std::streamsize(sizeof(double)) * field.values.size());
    if (!out) throw std::runtime_error("write_field: short write to " + path.string());
}

FieldSnapshot read_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_field: cannot open " + path.string());
    require_token(in, "CMHD-FIELD", path.string());
    int version;
    in >> version;
    if (version != 1) throw std::runtime_error("read_field: unsupported version");
    FieldSnapshot snap{.name = "", .time = 0.0, .field = ScalarField(Grid(4, 4, 4))};
    require_token(in, "name", path.string());
    in >> snap.name;
    require_token(in, "grid", path.string());
    int nx, ny, nz;
    in >> nx >> ny >> nz;
    require_token(in, "box", path.string());
    double lx, ly, lz;
    in >> lx >> ly >> lz;
    require_token(in, "time", path.string());
    in >> snap.time;
    require_token(in, "data", path.string());
    require_token(in, "float64", path.string());
    require_token(in, "little-endian", path.string());
    std::int64_t count;
    in >> count;
    in.get(); // the newline before the payload
    const Grid g(nx, ny, nz, lx, ly, lz);
    if (count != g.size()) throw std::runtime_error("read_field: count does not match grid");
    snap.field = ScalarField(g);
    in.read(reinterpret_cast<char*>(snap.field.values.data()),
            std::streamsize(sizeof(double)) * count);
    if (!in) throw std::runtime_error("read_field: truncated payload in " + path.string());
    return snap;
}

namespace {

nlohmann::json state_manifest(const Grid& g, const EquationOfState& eos, double time,
                              const std::string& formulation,
                              const std::vector<std::string>& fields) {
    nlohmann::json j;
    j["formulation"] = formulation;
    j["time"] = time;
    j["grid"] = {{"n", {g.nx, g.ny, g.nz}}, {"box", {g.lx, g.ly, g.lz}}};
    j["eos"] = {{"gamma", eos.gamma}, {"k", eos.k}};
    j["fields"] = fields;
    return j;
}

} // namespace

void save_clebsch_state(const std::filesystem::path& dir, const ClebschState& s,
                        const EquationOfState& eos) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> names;
    auto put = [&](const std::string& name, const ScalarField& f) {
        write_field(dir / (name + ".field"), name, f, s.time);
        names.push_back(name);
    };
    put("phi0", s.phi0);
    put("rho", s.rho);
    for (int l = 0; l < 3; ++l) {
        const std::string suffix = std::to_string(l + 1);
        put("alpha" + suffix, s.alpha[l]);
        put("mu" + suffix, s.mu[l]);
        put("phi" + suffix, s.phi[l]);
        put("beta" + suffix, s.beta[l]);
    }
    write_text_file(dir / "state_manifest.json",
                    state_manifest(s.phi0.grid, eos, s.time, "clebsch", names).dump(2) + "\n");
}

ClebschState load_clebsch_state(const std::filesystem::path& dir) {
    auto get = [&](const std::string& name) { return read_field(dir / (name + ".field")); };
    const FieldSnapshot phi0 = get("phi0");
    ClebschState s = make_zero_clebsch_state(phi0.field.grid);
    s.phi0 = phi0.field;
    s.time = phi0.time;
    s.rho = get("rho").field;
    for (int l = 0; l < 3; ++l) {
        const std::string suffix = std::to_string(l + 1);
        s.alpha[l] = get("alpha" + suffix).field;
        s.mu[l] = get("mu" + suffix).field;
        s.phi[l] = get("phi" + suffix).field;
        s.beta[l] = get("beta" + suffix).field;
    }
    return s;
}

void save_physical_state(const std::filesystem::path& dir, const PhysicalState& u,
                         const EquationOfState& eos) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> names;
    auto put = [&](const std::string& name, const ScalarField& f) {
        write_field(dir / (name + ".field"), name, f, u.time);
        names.push_back(name);
    };
    put("rho", u.rho);
    put("vx", u.v.x());
    put("vy", u.v.y());
    put("vz", u.v.z());
    put("bx", u.b.x());
    put("by", u.b.y());
    put("bz", u.b.z());
    write_text_file(dir / "state_manifest.json",
                    state_manifest(u.rho.grid, eos, u.time, "eulerian", names).dump(2) + "\n");
}

PhysicalState load_physical_state(const std::filesystem::path& dir) {
    auto get = [&](const std::string& name) { return read_field(dir / (name + ".field")); };
    const FieldSnapshot rho = get("rho");
    PhysicalState u = make_zero_physical_state(rho.field.grid);
    u.rho = rho.field;
    u.time = rho.time;
    u.v = VectorField(get("vx").field, get("vy").field, get("vz").field);
    u.b = VectorField(get("bx").field, get("by").field, get("bz").field);
    return u;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_text_file: cannot open " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write_text_file: short write to " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_text_file: cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace cmhd
