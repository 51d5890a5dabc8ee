#include "bettibounds/cubical.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace bettibounds {

CoefficientField CoefficientField::gfp(std::uint32_t p) {
    if (p < 2) throw std::invalid_argument("field characteristic must be >= 2");
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("field characteristic must be prime");
    return {p};
}

Nat BettiVector::sum() const {
    Nat total = 0;
    for (const Nat& r : ranks) total += r;
    return total;
}

std::string BettiVector::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < ranks.size(); ++i) os << (i ? ", " : "") << ranks[i].str();
    os << ')';
    return os.str();
}

CubicalSet::CubicalSet(std::size_t dim, Rat radius, std::vector<std::size_t> resolution)
    : dim_(dim), radius_(std::move(radius)), resolution_(std::move(resolution)) {
    if (dim_ < 1 || dim_ > 3) throw std::invalid_argument("cubical sets support dimensions 1..3");
    if (resolution_.size() != dim_) throw std::invalid_argument("one resolution per axis required");
    std::size_t cells = 1;
    for (std::size_t r : resolution_) {
        if (r == 0 || r > 4096) throw std::invalid_argument("resolution out of range");
        cells *= r;
    }
    if (!(radius_ > 0)) throw std::invalid_argument("box radius must be positive");
    occupancy_.assign(cells, false);
}

std::size_t CubicalSet::occupied_count() const {
    return static_cast<std::size_t>(std::count(occupancy_.begin(), occupancy_.end(), true));
}

std::size_t CubicalSet::index(const std::vector<std::size_t>& coords) const {
    std::size_t idx = 0;
    for (std::size_t a = dim_; a-- > 0;) idx = idx * resolution_[a] + coords[a];
    return idx;
}

std::vector<Rat> CubicalSet::cell_center(const std::vector<std::size_t>& coords) const {
    std::vector<Rat> c(dim_);
    for (std::size_t a = 0; a < dim_; ++a) {
        // -R + (2 i + 1) R / N
        c[a] = radius_ * Rat(2 * static_cast<long long>(coords[a]) + 1 -
                             static_cast<long long>(resolution_[a]),
                             static_cast<long long>(resolution_[a]));
    }
    return c;
}

bool CubicalSet::operator==(const CubicalSet& other) const {
    return dim_ == other.dim_ && radius_ == other.radius_ && resolution_ == other.resolution_ &&
           occupancy_ == other.occupancy_;
}

namespace {

void write_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw std::runtime_error("truncated cubical-set stream");
    return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
           (std::uint32_t(b[3]) << 24);
}

void write_decimal(std::ostream& out, const std::string& s) {
    write_u32(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_decimal(std::istream& in) {
    const std::uint32_t len = read_u32(in);
    if (len > 1u << 20) throw std::runtime_error("corrupt cubical-set stream");
    std::string s(len, '\0');
    in.read(s.data(), len);
    if (!in) throw std::runtime_error("truncated cubical-set stream");
    return s;
}

}  // namespace

void CubicalSet::serialize(std::ostream& out) const {
    out.write("CBS1", 4);
    write_u32(out, static_cast<std::uint32_t>(dim_));
    write_decimal(out, numerator(radius_).str());
    write_decimal(out, denominator(radius_).str());
    for (std::size_t r : resolution_) write_u32(out, static_cast<std::uint32_t>(r));
    std::vector<unsigned char> bytes((occupancy_.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < occupancy_.size(); ++i)
        if (occupancy_[i]) bytes[i / 8] |= static_cast<unsigned char>(1u << (i % 8));
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

CubicalSet CubicalSet::deserialize(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::string(magic, 4) != "CBS1") throw std::runtime_error("not a CBS1 stream");
    const std::uint32_t dim = read_u32(in);
    const Nat num(read_decimal(in));
    const Nat den(read_decimal(in));
    std::vector<std::size_t> res;
    for (std::uint32_t a = 0; a < dim; ++a) res.push_back(read_u32(in));
    CubicalSet cs(dim, Rat(num, den), res);
    std::vector<unsigned char> bytes((cs.occupancy_.size() + 7) / 8);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!in) throw std::runtime_error("truncated cubical-set stream");
    for (std::size_t i = 0; i < cs.occupancy_.size(); ++i)
        cs.occupancy_[i] = (bytes[i / 8] >> (i % 8)) & 1u;
    return cs;
}

namespace {

std::size_t thread_budget() {
    std::size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("BETTI_BOUNDS_THREADS")) {
        const long cap = std::atol(env);
        if (cap >= 1 && static_cast<std::size_t>(cap) < n) n = static_cast<std::size_t>(cap);
    }
    return n;
}

}  // namespace

CubicalSet rasterize(const Formula& f, const Rat& radius, std::size_t resolution) {
    const std::size_t n = formula_n_vars(f);
    if (n < 1 || n > 3)
        throw std::invalid_argument("rasterize: formula dimension must be 1..3, got " +
                                    std::to_string(n));
    for (const FnPtr& fn : atoms_of(f))
        if (!fn->is_concrete())
            throw std::invalid_argument("rasterize: abstract descriptor is not evaluable");

    CubicalSet cs(n, radius, std::vector<std::size_t>(n, resolution));
    std::vector<Rat> axis_centers(resolution);
    for (std::size_t i = 0; i < resolution; ++i)
        axis_centers[i] = radius * Rat(2 * static_cast<long long>(i) + 1 -
                                       static_cast<long long>(resolution),
                                       static_cast<long long>(resolution));

    const std::size_t rows = n == 1 ? 1 : (n == 2 ? resolution : resolution * resolution);
    const std::size_t n_threads = std::min(thread_budget(), rows);

    auto work = [&](std::size_t row_begin, std::size_t row_end) {
        std::vector<Rat> point(n);
        std::vector<std::size_t> coords(n, 0);
        for (std::size_t row = row_begin; row < row_end; ++row) {
            if (n >= 2) coords[1] = row % resolution;
            if (n == 3) coords[2] = row / resolution;
            for (std::size_t a = 1; a < n; ++a) point[a] = axis_centers[coords[a]];
            for (std::size_t ix = 0; ix < resolution; ++ix) {
                coords[0] = ix;
                point[0] = axis_centers[ix];
                if (eval_formula(f, point)) cs.set(cs.index(coords), true);
            }
        }
    };

    if (n_threads <= 1) {
        work(0, rows);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (rows + n_threads - 1) / n_threads;
        for (std::size_t tduty = 0; tduty < n_threads; ++tduty) {
            const std::size_t b = tduty * chunk;
            const std::size_t e = std::min(rows, b + chunk);
            if (b >= e) break;
            pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }
    return cs;
}

namespace {

// Cells are keyed by per-axis positions in [0, 2N]: even positions are
// vertex hyperplanes, odd positions cell interiors.  Dimension = number of
// odd positions.
using CellKey = std::uint64_t;

CellKey pack(const std::array<std::uint32_t, 3>& pos, std::size_t dim) {
    CellKey key = 0;
    for (std::size_t a = 0; a < dim; ++a) key |= CellKey(pos[a]) << (20 * a);
    return key;
}

struct FieldOps {
    std::uint64_t p;
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : static_cast<std::uint32_t>(p - a); }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        const std::uint64_t s = std::uint64_t(a) + b;
        return static_cast<std::uint32_t>(s >= p ? s - p : s);
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>((std::uint64_t(a) * b) % p);
    }
    std::uint32_t inv(std::uint32_t a) const {  // p is prime
        std::uint32_t result = 1, base = a;
        std::uint64_t e = p - 2;
        while (e) {
            if (e & 1) result = mul(result, base);
            base = mul(base, base);
            e >>= 1;
        }
        return result;
    }
};

using SparseColumn = std::vector<std::pair<std::uint32_t, std::uint32_t>>;  // (row, coeff), rows ascending

// Persistence-style column reduction; rank = number of columns that survive
// with a non-zero pivot.
std::size_t matrix_rank(std::vector<SparseColumn>& cols, const FieldOps& field) {
    std::unordered_map<std::uint32_t, std::size_t> pivot_owner;
    std::size_t rank = 0;
    SparseColumn merged;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        SparseColumn& col = cols[j];
        while (!col.empty()) {
            const std::uint32_t low = col.back().first;
            auto it = pivot_owner.find(low);
            if (it == pivot_owner.end()) {
                pivot_owner.emplace(low, j);
                ++rank;
                break;
            }
            const SparseColumn& other = cols[it->second];
            // col -= (col.low / other.low) * other
            const std::uint32_t factor = field.mul(col.back().second, field.inv(other.back().second));
            merged.clear();
            merged.reserve(col.size() + other.size());
            std::size_t a = 0, b = 0;
            while (a < col.size() || b < other.size()) {
                if (b == other.size() || (a < col.size() && col[a].first < other[b].first)) {
                    merged.push_back(col[a++]);
                } else if (a == col.size() || other[b].first < col[a].first) {
                    const std::uint32_t v = field.neg(field.mul(factor, other[b].second));
                    if (v) merged.emplace_back(other[b].first, v);
                    ++b;
                } else {
                    const std::uint32_t v =
                        field.add(col[a].second, field.neg(field.mul(factor, other[b].second)));
                    if (v) merged.emplace_back(col[a].first, v);
                    ++a;
                    ++b;
                }
            }
            col.swap(merged);
        }
    }
    return rank;
}

}  // namespace

BettiVector betti(const CubicalSet& cs, const CoefficientField& field) {
    const std::size_t n = cs.dim();
    const FieldOps ops{field.p};

    // Collect all cells of each dimension from the faces of occupied cubes.
    std::vector<std::unordered_map<CellKey, std::uint32_t>> cells(n + 1);
    std::vector<std::vector<CellKey>> keys(n + 1);

    std::vector<std::size_t> coords(n, 0);
    const auto& res = cs.resolution();
    std::size_t total = cs.cell_count();
    for (std::size_t idx = 0; idx < total; ++idx) {
        if (cs.occupied(idx)) {
            std::size_t rem = idx;
            for (std::size_t a = 0; a < n; ++a) {
                coords[a] = rem % res[a];
                rem /= res[a];
            }
            // Enumerate the 3^n faces: per axis keep the interval (2i+1) or
            // collapse to a bounding vertex plane (2i or 2i+2).
            const std::size_t combos = n == 1 ? 3 : (n == 2 ? 9 : 27);
            for (std::size_t combo = 0; combo < combos; ++combo) {
                std::array<std::uint32_t, 3> pos{0, 0, 0};
                std::size_t c = combo, d = 0;
                for (std::size_t a = 0; a < n; ++a) {
                    const std::size_t choice = c % 3;
                    c /= 3;
                    const std::uint32_t base = static_cast<std::uint32_t>(2 * coords[a]);
                    if (choice == 0) {
                        pos[a] = base + 1;
                        ++d;
                    } else {
                        pos[a] = choice == 1 ? base : base + 2;
                    }
                }
                auto& bucket = cells[d];
                const CellKey key = pack(pos, n);
                if (bucket.emplace(key, static_cast<std::uint32_t>(bucket.size())).second)
                    keys[d].push_back(key);
            }
        }
    }

    // Boundary ranks.
    std::vector<std::size_t> ranks(n + 2, 0);  // ranks[d] = rank of boundary_d
    for (std::size_t d = 1; d <= n; ++d) {
        if (keys[d].empty()) continue;
        std::vector<SparseColumn> cols;
        cols.reserve(keys[d].size());
        for (const CellKey key : keys[d]) {
            SparseColumn col;
            std::array<std::uint32_t, 3> pos{0, 0, 0};
            for (std::size_t a = 0; a < n; ++a)
                pos[a] = static_cast<std::uint32_t>((key >> (20 * a)) & 0xFFFFFu);
            std::uint32_t sign_parity = 0;  // number of interval axes seen so far
            for (std::size_t a = 0; a < n; ++a) {
                if (pos[a] % 2 == 0) continue;
                // d(sigma x [v,w]) picks up (-1)^(axes before) ({w} - {v}).
                const std::uint32_t plus = sign_parity % 2 == 0 ? 1 : ops.neg(1);
                const std::uint32_t minus = ops.neg(plus);
                std::array<std::uint32_t, 3> fpos = pos;
                fpos[a] = pos[a] + 1;
                col.emplace_back(cells[d - 1].at(pack(fpos, n)), plus);
                fpos[a] = pos[a] - 1;
                col.emplace_back(cells[d - 1].at(pack(fpos, n)), minus);
                ++sign_parity;
            }
            std::sort(col.begin(), col.end());
            cols.push_back(std::move(col));
        }
        ranks[d] = matrix_rank(cols, ops);
    }

    // H_n of a rasterized subset of R^n vanishes identically (no closed
    // n-cycle fits in the ambient grid), so the vector carries b_0..b_{n-1}.
    BettiVector bv;
    for (std::size_t d = 0; d < n; ++d) {
        const std::size_t cells_d = keys[d].size();
        const std::size_t b = cells_d - ranks[d] - ranks[d + 1];
        bv.ranks.emplace_back(b);
    }
    return bv;
}

bool cubical_subset(const CubicalSet& inner, const CubicalSet& outer) {
    if (!(inner.dim() == outer.dim() && inner.radius() == outer.radius() &&
          inner.resolution() == outer.resolution()))
        throw std::invalid_argument("cubical_subset: geometry mismatch");
    for (std::size_t i = 0; i < inner.cell_count(); ++i)
        if (inner.occupied(i) && !outer.occupied(i)) return false;
    return true;
}

}  // namespace bettibounds
