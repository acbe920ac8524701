#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <system_error>

#include "cfgn/error.hpp"
#include "cfgn/format.hpp"
#include "cfgn/sampler.hpp"

namespace cfgn {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    const auto res = std::to_chars(buf, buf + 16, v, 16);
    std::string s(buf, res.ptr);
    return std::string(16 - s.size(), '0') + s;
}

Fnv1a& Fnv1a::bytes(const void* data, std::size_t n) noexcept {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        state_ ^= p[i];
        state_ *= 0x100000001b3ull;
    }
    return *this;
}

Fnv1a& Fnv1a::u64(std::uint64_t v) noexcept {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    return bytes(b, 8);
}

Fnv1a& Fnv1a::f64(double v) noexcept { return u64(std::bit_cast<std::uint64_t>(v)); }

std::uint64_t ensemble_key(const CfgnParams& cp, std::size_t n, std::size_t reps, std::uint64_t seed) {
    const ProcessParams& p = cp.base();
    Fnv1a h;
    h.text("cfgn-ensemble-v1")
        .f64(p.hurst1())
        .f64(p.hurst2())
        .f64(p.sigma1())
        .f64(p.sigma2())
        .f64(p.rho())
        .u64(p.variant() == Variant::causal ? 0 : 1)
        .u64(p.half_limit() ? 1 : 0)
        .f64(cp.lambda0())
        .f64(cp.a1())
        .f64(cp.a2())
        .u64(n)
        .u64(reps)
        .u64(seed);
    return h.value();
}

void write_ensemble_csv(const Ensemble& e, const std::filesystem::path& file, const std::string& header) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error(ErrorKind::io_error, "cannot write " + file.string());
    out << header;
    out << "# ensemble_key=" << hex64(e.key()) << " seed=" << e.seed() << " jitter=" << format_double(e.jitter())
        << '\n';
    out << "replication,n,value\n";
    for (std::size_t r = 0; r < e.replications(); ++r) {
        const auto row = e.path(r);
        for (std::size_t i = 0; i < row.size(); ++i) out << r << ',' << i << ',' << format_double(row[i]) << '\n';
    }
}

namespace {

constexpr char binary_magic[8] = {'C', 'F', 'G', 'N', 'E', 'N', 'S', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& in) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) throw Error(ErrorKind::io_error, "truncated ensemble cache");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

} // namespace

std::filesystem::path cache_path(const std::filesystem::path& dir, std::uint64_t key) {
    return dir / ("cfgn-" + hex64(key) + ".bin");
}

// Layout (little endian): magic[8], key, H1, H2, sigma1, sigma2, rho, variant,
// half_limit, lambda0, a1, a2, seed, M, n, jitter, then M*n doubles row-major.
void write_ensemble_binary(const Ensemble& e, const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error(ErrorKind::io_error, "cannot write " + file.string());
    const CfgnParams& cp = e.params();
    const ProcessParams& p = cp.base();
    out.write(binary_magic, sizeof binary_magic);
    put_u64(out, e.key());
    put_f64(out, p.hurst1());
    put_f64(out, p.hurst2());
    put_f64(out, p.sigma1());
    put_f64(out, p.sigma2());
    put_f64(out, p.rho());
    put_u64(out, p.variant() == Variant::causal ? 0 : 1);
    put_u64(out, p.half_limit() ? 1 : 0);
    put_f64(out, cp.lambda0());
    put_f64(out, cp.a1());
    put_f64(out, cp.a2());
    put_u64(out, e.seed());
    put_u64(out, e.replications());
    put_u64(out, e.length());
    put_f64(out, e.jitter());
    for (double v : e.paths().data()) put_f64(out, v);
    if (!out) throw Error(ErrorKind::io_error, "failed writing " + file.string());
}

Ensemble read_ensemble_binary(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorKind::io_error, "cannot read " + file.string());
    char magic[8];
    if (!in.read(magic, 8) || std::memcmp(magic, binary_magic, 8) != 0) {
        throw Error(ErrorKind::io_error, "not an ensemble cache: " + file.string());
    }
    const std::uint64_t key = get_u64(in);
    const double h1 = get_f64(in), h2 = get_f64(in), s1 = get_f64(in), s2 = get_f64(in), rho = get_f64(in);
    const Variant variant = get_u64(in) == 0 ? Variant::causal : Variant::well_balanced;
    const bool half_limit = get_u64(in) != 0;
    const double lambda0 = get_f64(in), a1 = get_f64(in), a2 = get_f64(in);
    const std::uint64_t seed = get_u64(in);
    const std::uint64_t reps = get_u64(in);
    const std::uint64_t n = get_u64(in);
    const double jitter = get_f64(in);
    CfgnParams cp(ProcessParams(h1, h2, s1, s2, rho, variant, half_limit), lambda0, a1, a2);
    Matrix paths(reps, n);
    for (std::size_t r = 0; r < reps; ++r) {
        for (double& v : paths.row(r)) v = get_f64(in);
    }
    Ensemble e(cp, seed, std::move(paths), jitter);
    if (e.key() != key) throw Error(ErrorKind::io_error, "ensemble cache key mismatch in " + file.string());
    return e;
}

Ensemble cached_ensemble(const std::filesystem::path& dir, const CfgnParams& cp, std::size_t n, std::size_t reps,
                         std::uint64_t seed, unsigned threads) {
    const auto file = cache_path(dir, ensemble_key(cp, n, reps, seed));
    std::error_code ec;
    if (std::filesystem::exists(file, ec)) return read_ensemble_binary(file);
    Ensemble e = make_ensemble(cp, n, reps, seed, threads);
    std::filesystem::create_directories(dir, ec);
    write_ensemble_binary(e, file);
    return e;
}

} // namespace cfgn
