#include "scn/model.hpp"

#include <algorithm>

namespace scn {

namespace {

void check(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

}  // namespace

void ModelParams::validate() const {
    check(n >= 1, "n must be >= 1");
    check(m >= 1, "m must be >= 1");
    check(d > 0.0, "d must be > 0");
    check(lambda > 0.0 && lambda <= 1.0, "lambda must be in (0, 1]");
    check(c >= 0.0, "c must be >= 0");
    check(gamma >= 0.0, "gamma must be >= 0");
    if (!tiers.empty()) {
        check(tiers.size() >= 2, "tiers must list at least two tiers");
        for (int s : tiers) check(s >= 1, "every tier size must be >= 1");
        check(tiers.front() == n && tiers.back() == m,
              "tiers must agree with n (first) and m (last)");
    }
}

std::vector<int> ModelParams::tier_sizes() const {
    if (!tiers.empty()) return tiers;
    return {n, m};
}

void HeteroParams::validate() const {
    check(n >= 1, "n must be >= 1");
    check(m >= 1, "m must be >= 1");
    check(d > 0.0, "d must be > 0");
    check(c >= 0.0, "c must be >= 0");
    check(lambda_r > 0.0 && lambda_r < 1.0, "lambda_r must be in (0, 1)");
    check(static_cast<int>(lambda_sup.size()) == m, "lambda_sup must have one entry per supplier");
    check(static_cast<int>(gamma_sup.size()) == m, "gamma_sup must have one entry per supplier");
    for (double l : lambda_sup) check(l > 0.0 && l < 1.0, "supplier lambda must be in (0, 1)");
    for (double g : gamma_sup) check(g >= 0.0, "supplier gamma must be >= 0");
}

HeteroParams HeteroParams::from_homogeneous(const ModelParams& p) {
    HeteroParams h;
    h.n = p.n;
    h.m = p.m;
    h.d = p.d;
    h.c = p.c;
    h.lambda_r = p.lambda;
    h.lambda_sup.assign(static_cast<size_t>(p.m), p.lambda);
    h.gamma_sup.assign(static_cast<size_t>(p.m), p.gamma);
    return h;
}

Network::Network(int n, int m, std::vector<std::vector<int>> retailer_links)
    : Network(std::vector<int>{n, m},
              std::vector<std::vector<std::vector<int>>>{std::move(retailer_links)}) {}

Network::Network(std::vector<int> tier_sizes,
                 std::vector<std::vector<std::vector<int>>> links_per_tier)
    : sizes_(std::move(tier_sizes)), links_(std::move(links_per_tier)) {
    check(sizes_.size() >= 2, "a network needs at least two tiers");
    for (int s : sizes_) check(s >= 1, "every tier size must be >= 1");
    check(links_.size() == sizes_.size() - 1,
          "need one out-link list per tier except the top one");
    for (size_t t = 0; t + 1 < sizes_.size(); ++t) {
        check(links_[t].size() == static_cast<size_t>(sizes_[t]),
              "tier " + std::to_string(t + 1) + ": wrong agent count in link list");
        const int up = sizes_[t + 1];
        for (auto& nb : links_[t]) {
            std::sort(nb.begin(), nb.end());
            check(std::adjacent_find(nb.begin(), nb.end()) == nb.end(),
                  "duplicate link in an out-neighborhood");
            for (int j : nb)
                check(j >= 0 && j < up, "link target out of range");
        }
    }
    build_caches();
}

void Network::build_caches() {
    in_.assign(sizes_.size() - 1, {});
    for (size_t t = 0; t + 1 < sizes_.size(); ++t) {
        in_[t].assign(static_cast<size_t>(sizes_[t + 1]), {});
        for (int i = 0; i < sizes_[t]; ++i)
            for (int j : links_[t][i]) in_[t][j].push_back(i);
    }
    const int n = sizes_[0];
    active_retailers_ = 0;
    for (int i = 0; i < n; ++i)
        if (!links_[0][i].empty()) ++active_retailers_;
    overlap_.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int k = i; k < n; ++k) {
            const auto& a = links_[0][i];
            const auto& b = links_[0][k];
            int cnt = 0;
            size_t x = 0, y = 0;
            while (x < a.size() && y < b.size()) {
                if (a[x] < b[y]) ++x;
                else if (a[x] > b[y]) ++y;
                else { ++cnt; ++x; ++y; }
            }
            overlap_[i][k] = overlap_[k][i] = cnt;
        }
}

const std::vector<int>& Network::out_neighbors(int t, int i) const {
    return links_.at(static_cast<size_t>(t - 1)).at(static_cast<size_t>(i));
}

const std::vector<int>& Network::in_neighbors(int t, int j) const {
    return in_.at(static_cast<size_t>(t - 2)).at(static_cast<size_t>(j));
}

int Network::out_degree(int t, int i) const {
    return static_cast<int>(out_neighbors(t, i).size());
}

int Network::in_degree(int t, int j) const {
    return static_cast<int>(in_neighbors(t, j).size());
}

int Network::overlap(int i, int i2) const {
    return overlap_.at(static_cast<size_t>(i)).at(static_cast<size_t>(i2));
}

Network Network::with_retailer_links(int i, std::vector<int> links) const {
    auto all = links_;
    all[0].at(static_cast<size_t>(i)) = std::move(links);
    return Network(sizes_, std::move(all));
}

std::string to_string(NetClass c) {
    switch (c) {
        case NetClass::Empty: return "empty";
        case NetClass::Cone: return "cone";
        case NetClass::Parallel: return "parallel";
        case NetClass::Zee: return "zee";
        case NetClass::Full: return "full";
        case NetClass::Other: return "other";
    }
    return "other";
}

std::optional<NetClass> net_class_from_string(const std::string& s) {
    for (NetClass c : {NetClass::Empty, NetClass::Cone, NetClass::Parallel,
                       NetClass::Zee, NetClass::Full, NetClass::Other})
        if (to_string(c) == s) return c;
    return std::nullopt;
}

namespace {

std::vector<std::vector<int>> canonical_links(NetClass c) {
    switch (c) {
        case NetClass::Empty: return {{}, {}};
        case NetClass::Cone: return {{0}, {0}};
        case NetClass::Parallel: return {{0}, {1}};
        case NetClass::Zee: return {{0}, {0, 1}};
        case NetClass::Full: return {{0, 1}, {0, 1}};
        default: return {};
    }
}

std::vector<std::vector<int>> relabel(const Network& net,
                                      const std::array<int, 2>& sup_perm,
                                      const std::array<int, 2>& ret_perm) {
    std::vector<std::vector<int>> out(2);
    for (int i = 0; i < 2; ++i) {
        std::vector<int> nb;
        for (int j : net.retailer_links(i)) nb.push_back(sup_perm[static_cast<size_t>(j)]);
        std::sort(nb.begin(), nb.end());
        out[static_cast<size_t>(ret_perm[static_cast<size_t>(i)])] = std::move(nb);
    }
    return out;
}

}  // namespace

Classification classify_2x2(const Network& net) {
    if (net.tier_count() != 2 || net.retailers() != 2 || net.suppliers() != 2)
        throw ValidationError("classification is defined for 2x2 two-tier networks");
    static const std::array<std::array<int, 2>, 2> perms = {{{0, 1}, {1, 0}}};
    for (NetClass label : {NetClass::Empty, NetClass::Cone, NetClass::Parallel,
                           NetClass::Zee, NetClass::Full}) {
        const auto target = canonical_links(label);
        for (const auto& sp : perms)
            for (const auto& rp : perms)
                if (relabel(net, sp, rp) == target) {
                    Classification res;
                    res.label = label;
                    res.supplier_perm = sp;
                    res.retailer_perm = rp;
                    return res;
                }
    }
    return Classification{};
}

Network make_empty_2x2() { return Network(2, 2, {{}, {}}); }
Network make_cone_2x2(int supplier) { return Network(2, 2, {{supplier}, {supplier}}); }
Network make_parallel_2x2() { return Network(2, 2, {{0}, {1}}); }
Network make_zee_2x2() { return Network(2, 2, {{0}, {0, 1}}); }
Network make_full_2x2() { return Network(2, 2, {{0, 1}, {0, 1}}); }

}  // namespace scn
