#include "wlab/diffpoly.hpp"

#include <algorithm>
#include <sstream>

namespace wlab::diffpoly {

int mono_weight(const MonoKey& key) {
    int w = 0;
    for (const auto& [k, e] : key) w += (k + 2) * e;
    return w;
}

int mono_max_order(const MonoKey& key) {
    int m = -1;
    for (const auto& [k, e] : key) m = std::max(m, k);
    return m;
}

int mono_degree(const MonoKey& key) {
    int d = 0;
    for (const auto& [k, e] : key) d += e;
    return d;
}

DiffPoly DiffPoly::constant(Rat c) {
    DiffPoly p;
    p.add_term({}, c);
    return p;
}

DiffPoly DiffPoly::monomial(Rat c, const MonoKey& key) {
    DiffPoly p;
    p.add_term(key, c);
    return p;
}

DiffPoly DiffPoly::var(int k, int power) {
    MonoKey key;
    key[k] = power;
    return monomial(Rat(1), key);
}

int DiffPoly::max_order() const {
    int m = -1;
    for (const auto& [key, c] : terms_) m = std::max(m, mono_max_order(key));
    return m;
}

void DiffPoly::add_term(const MonoKey& key, const Rat& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

DiffPoly operator+(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly r = a;
    for (const auto& [key, c] : b.terms_) r.add_term(key, c);
    return r;
}

DiffPoly operator-(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly r = a;
    for (const auto& [key, c] : b.terms_) r.add_term(key, -c);
    return r;
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly r;
    for (const auto& [key, c] : terms_) r.add_term(key, -c);
    return r;
}

DiffPoly DiffPoly::scaled(const Rat& c) const {
    DiffPoly r;
    for (const auto& [key, v] : terms_) r.add_term(key, v * c);
    return r;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly r;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            MonoKey key = ka;
            for (const auto& [k, e] : kb) key[k] += e;
            r.add_term(key, ca * cb);
        }
    }
    return r;
}

DiffPoly DiffPoly::total_derivative() const {
    DiffPoly r;
    for (const auto& [key, c] : terms_) {
        for (const auto& [k, e] : key) {
            MonoKey stepped = key;
            if (--stepped[k] == 0) stepped.erase(k);
            stepped[k + 1] += 1;
            r.add_term(stepped, c * Rat(e));
        }
    }
    return r;
}

DiffPoly DiffPoly::partial_wrt(int k) const {
    DiffPoly r;
    for (const auto& [key, c] : terms_) {
        auto it = key.find(k);
        if (it == key.end()) continue;
        MonoKey reduced = key;
        if (--reduced[k] == 0) reduced.erase(k);
        r.add_term(reduced, c * Rat(it->second));
    }
    return r;
}

DiffPoly total_derivative(const DiffPoly& p) { return p.total_derivative(); }

namespace {

// all monomial keys of the given weight: multisets of derivative orders k
// with sum (k+2) = weight
void enumerate_keys(int weight, int max_part, MonoKey& current,
                    std::vector<MonoKey>& out) {
    if (weight == 0) {
        out.push_back(current);
        return;
    }
    for (int k = std::min(max_part, weight - 2); k >= 0; --k) {
        current[k] += 1;
        enumerate_keys(weight - (k + 2), k, current, out);
        if (--current[k] == 0) current.erase(k);
    }
}

std::vector<MonoKey> keys_of_weight(int weight) {
    std::vector<MonoKey> out;
    if (weight == 0) {
        out.push_back({});
        return out;
    }
    if (weight < 2) return out;
    MonoKey cur;
    enumerate_keys(weight, weight - 2, cur, out);
    return out;
}

DiffPoly integrate_homogeneous(const DiffPoly& p, int weight) {
    if (weight == 0) {
        if (!p.is_zero()) throw NotExact("constant term is not a total derivative");
        return {};
    }
    const std::vector<MonoKey> candidates = keys_of_weight(weight - 1);
    // row index for every monomial of the target weight
    std::map<MonoKey, std::size_t> row_of;
    std::vector<DiffPoly> dcand;
    dcand.reserve(candidates.size());
    for (const auto& key : candidates) {
        DiffPoly d = DiffPoly::monomial(Rat(1), key).total_derivative();
        for (const auto& [m, c] : d.terms())
            row_of.emplace(m, row_of.size());
        dcand.push_back(std::move(d));
    }
    for (const auto& [m, c] : p.terms()) row_of.emplace(m, row_of.size());

    const std::size_t rows = row_of.size();
    const std::size_t cols = candidates.size();
    std::vector<std::vector<Rat>> a(rows, std::vector<Rat>(cols + 1, Rat(0)));
    for (std::size_t j = 0; j < cols; ++j)
        for (const auto& [m, c] : dcand[j].terms()) a[row_of[m]][j] = c;
    for (const auto& [m, c] : p.terms()) a[row_of[m]][cols] = c;

    // exact Gaussian elimination
    std::vector<std::size_t> pivot_col(rows, cols + 1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][col].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        const Rat inv = Rat(1) / a[rank][col];
        for (std::size_t j = col; j <= cols; ++j) a[rank][j] = a[rank][j] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || a[i][col].is_zero()) continue;
            const Rat f = a[i][col];
            for (std::size_t j = col; j <= cols; ++j)
                a[i][j] = a[i][j] - f * a[rank][j];
        }
        pivot_col[rank] = col;
        ++rank;
    }
    for (std::size_t i = rank; i < rows; ++i) {
        if (!a[i][cols].is_zero())
            throw NotExact("no differential polynomial integrates the input");
    }
    DiffPoly q;
    for (std::size_t i = 0; i < rank; ++i) {
        if (pivot_col[i] < cols) {
            const Rat& v = a[i][cols];
            if (!v.is_zero()) q.add_term(candidates[pivot_col[i]], v);
        }
    }
    // verify exactly; inconsistent free columns would surface here
    if (q.total_derivative() != p)
        throw NotExact("integration check failed");
    return q;
}

} // namespace

DiffPoly formal_integrate(const DiffPoly& p) {
    // split into weight-homogeneous pieces
    std::map<int, DiffPoly> pieces;
    for (const auto& [key, c] : p.terms()) pieces[mono_weight(key)].add_term(key, c);
    DiffPoly out;
    for (auto& [w, piece] : pieces) out = out + integrate_homogeneous(piece, w);
    return out;
}

DiffPoly kdv_P(int n, int max_n) {
    if (n < 0 || n > max_n) throw BadInput("kdv_P order out of range");
    static std::map<int, DiffPoly> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    DiffPoly p;
    if (n == 0) {
        p = DiffPoly::constant(Rat::of(1, 2));
    } else {
        const DiffPoly prev = kdv_P(n - 1, max_n);
        const DiffPoly u = DiffPoly::var(0);
        const DiffPoly uprime = DiffPoly::var(1);
        const DiffPoly rhs = prev.total_derivative().total_derivative().total_derivative() +
                             (u * prev.total_derivative()).scaled(Rat(4)) +
                             (uprime * prev).scaled(Rat(2));
        p = formal_integrate(rhs);
    }
    cache.emplace(n, p);
    return p;
}

DiffPoly flow_rhs(int n, int max_n) {
    if (n < 0 || n + 1 > max_n) throw BadInput("flow order out of range");
    return -kdv_P(n + 1, max_n).total_derivative();
}

DiffPoly flow_derivative(const DiffPoly& p, const DiffPoly& rhs) {
    DiffPoly out;
    DiffPoly dz_rhs = rhs;
    for (int m = 0; m <= p.max_order(); ++m) {
        const DiffPoly partial = p.partial_wrt(m);
        if (!partial.is_zero()) out = out + partial * dz_rhs;
        dz_rhs = dz_rhs.total_derivative();
    }
    return out;
}

DiffPoly mixed_flow_commutator(int j, int k) {
    if (j == k) throw BadInput("commutator needs distinct flows");
    if (j < 0 || j > 3 || k < 0 || k > 3) throw BadInput("flow index out of 0..3");
    const DiffPoly fj = flow_rhs(j);
    const DiffPoly fk = flow_rhs(k);
    return flow_derivative(fk, fj) - flow_derivative(fj, fk);
}

std::vector<cplx> evaluate(const DiffPoly& p,
                           const std::vector<std::vector<cplx>>& jets) {
    const int need = p.max_order();
    std::vector<cplx> out;
    out.reserve(jets.size());
    // coefficient conversion once per term
    std::vector<std::pair<const MonoKey*, double>> terms;
    terms.reserve(p.terms().size());
    for (const auto& [key, c] : p.terms()) terms.emplace_back(&key, c.to_double());
    for (const auto& jet : jets) {
        if (static_cast<int>(jet.size()) <= need)
            throw InsufficientJetOrder("jet order below polynomial order");
        cplx acc = 0.0;
        for (const auto& [key, c] : terms) {
            cplx prod = c;
            for (const auto& [kk, e] : *key) {
                const cplx v = jet[static_cast<std::size_t>(kk)];
                for (int q = 0; q < e; ++q) prod *= v;
            }
            acc += prod;
        }
        out.push_back(acc);
    }
    return out;
}

namespace {

std::string mono_to_string(const MonoKey& key, const Rat& coeff, bool lead) {
    std::ostringstream os;
    Rat c = coeff;
    const bool neg = c.to_double() < 0.0;
    if (neg) c = -c;
    if (lead) {
        if (neg) os << "-";
    } else {
        os << (neg ? " - " : " + ");
    }
    const bool unit = (c == Rat(1));
    if (unit && key.empty()) {
        os << "1";
        return os.str();
    }
    bool first = true;
    if (!unit) {
        os << c.to_string();
        first = false;
    }
    for (const auto& [k, e] : key) {
        if (!first) os << "*";
        first = false;
        os << "u";
        if (k > 0 && k <= 3)
            for (int i = 0; i < k; ++i) os << "'";
        else if (k > 3)
            os << "^(" << k << ")";
        if (e > 1) os << "^" << e;
    }
    return os.str();
}

} // namespace

std::string DiffPoly::to_string() const {
    if (terms_.empty()) return "0";
    // print with highest derivative first, the way the hierarchy is usually written
    std::vector<std::pair<MonoKey, Rat>> items(terms_.begin(), terms_.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        const int oa = mono_max_order(a.first), ob = mono_max_order(b.first);
        if (oa != ob) return oa > ob;
        const int wa = mono_weight(a.first), wb = mono_weight(b.first);
        if (wa != wb) return wa > wb;
        return a.first < b.first;
    });
    std::string out;
    bool lead = true;
    for (const auto& [key, c] : items) {
        out += mono_to_string(key, c, lead);
        lead = false;
    }
    return out;
}

} // namespace wlab::diffpoly
