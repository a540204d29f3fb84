#include "ginls/lab/output.hpp"

#include <cstring>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ginls {
namespace lab {

namespace {

bool host_little_endian() {
    const std::uint16_t probe = 1;
    unsigned char byte;
    std::memcpy(&byte, &probe, 1);
    return byte == 1;
}

void put_le_double(std::ostream& out, double v) {
    unsigned char bytes[8];
    std::memcpy(bytes, &v, 8);
    if (!host_little_endian()) std::swap(bytes[0], bytes[7]), std::swap(bytes[1], bytes[6]),
        std::swap(bytes[2], bytes[5]), std::swap(bytes[3], bytes[4]);
    out.write(reinterpret_cast<const char*>(bytes), 8);
}

double get_le_double(std::istream& in) {
    unsigned char bytes[8];
    in.read(reinterpret_cast<char*>(bytes), 8);
    if (!host_little_endian()) std::swap(bytes[0], bytes[7]), std::swap(bytes[1], bytes[6]),
        std::swap(bytes[2], bytes[5]), std::swap(bytes[3], bytes[4]);
    double v;
    std::memcpy(&v, bytes, 8);
    return v;
}

}  // namespace

TimeSeriesWriter::TimeSeriesWriter(const std::string& path, const RunConfig& cfg,
                                   bool integrable)
    : out_(path), integrable_(integrable) {
    if (!out_) throw std::runtime_error("cannot open time series file: " + path);
    out_ << "# ginls time series v1\n";
    out_ << "# config: " << config_echo(cfg) << "\n";
    out_ << "# columns: t,E1,E2,H1,H2," << (integrable ? "H2_inls," : "")
         << "mass,linf,seam_gap,dx2norm\n";
    out_.precision(17);
}

void TimeSeriesWriter::row(const FieldState& f, const ModelParams& p) {
    const double e1 = energy_Ek(f, 1);
    const double e2 = energy_Ek(f, 2);
    const double h1 = functional_H1(f, p);
    const double h2 = functional_H2(f, p);
    const double dx2 = dx2_norm(f);
    out_ << f.time << ',' << e1 << ',' << e2 << ',' << h1 << ',' << h2 << ',';
    if (integrable_) out_ << functional_H2_inls(f, p) << ',';
    out_ << renormalized_mass(f) << ',' << linf_norm(f) << ',' << seam_gap(f) << ','
         << dx2 << '\n';
    out_.flush();
}

void write_snapshot(const std::string& path, const FieldState& f, const ModelParams& p) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open snapshot file: " + path);
    std::ostringstream hdr;
    hdr.precision(17);
    hdr << "ginls-snapshot v1 endian=little layout=f64_re_im n=" << f.grid->size()
        << " length=" << f.grid->length() << " rho=" << f.rho << " t=" << f.time
        << " alpha=" << p.alpha << " beta=" << p.beta << " delta=" << p.delta << " moll=";
    if (p.moll_level) hdr << *p.moll_level;
    else hdr << "none";
    hdr << " dealias=" << (p.dealias ? 1 : 0) << " operator="
        << (p.nonlocal == NonlocalKind::TDelta ? "tdelta" : "hilbert");
    out << hdr.str() << '\n';
    for (const auto& v : f.values) {
        put_le_double(out, v.real());
        put_le_double(out, v.imag());
    }
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open snapshot file: " + path);
    std::string header;
    std::getline(in, header);
    std::istringstream hs(header);
    std::string magic, version;
    hs >> magic >> version;
    if (magic != "ginls-snapshot" || version != "v1")
        throw std::runtime_error("not a ginls snapshot: " + path);

    std::map<std::string, std::string> kv;
    std::string tok;
    while (hs >> tok) {
        auto pos = tok.find('=');
        if (pos != std::string::npos) kv[tok.substr(0, pos)] = tok.substr(pos + 1);
    }
    auto need = [&](const std::string& k) {
        auto it = kv.find(k);
        if (it == kv.end()) throw std::runtime_error("snapshot header missing " + k);
        return it->second;
    };
    if (need("endian") != "little" || need("layout") != "f64_re_im")
        throw std::runtime_error("unsupported snapshot layout");

    Snapshot s;
    const std::size_t n = std::stoul(need("n"));
    auto grid = make_grid(n, std::stod(need("length")));
    s.field = make_field(grid, std::stod(need("rho")), std::stod(need("t")));
    s.params.alpha = std::stod(need("alpha"));
    s.params.beta = std::stod(need("beta"));
    s.params.delta = std::stod(need("delta"));
    s.params.rho = s.field.rho;
    const std::string moll = need("moll");
    if (moll != "none") s.params.moll_level = std::stoi(moll);
    s.params.dealias = need("dealias") == "1";
    s.params.nonlocal =
        need("operator") == "hilbert" ? NonlocalKind::Hilbert : NonlocalKind::TDelta;
    for (std::size_t j = 0; j < n; ++j) {
        const double re = get_le_double(in);
        const double im = get_le_double(in);
        s.field.values[j] = cplx(re, im);
    }
    if (!in) throw std::runtime_error("snapshot truncated: " + path);
    return s;
}

}  // namespace lab
}  // namespace ginls
