#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace scn {

// Invalid parameters, malformed network/config input.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Request exceeds an exhaustive-search size guard.
class SizeGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Homogeneous model parameters. `d` is the consumer demand per retailer;
// total consumer demand is delta() = n*d regardless of how many retailers
// actually link upstream. lambda = 1 is accepted (degenerate, zero-variance
// case); lambda = 0 is not.
struct ModelParams {
    int n = 2;
    int m = 2;
    std::vector<int> tiers;  // optional; empty means two tiers {n, m}
    double d = 1.0;
    double lambda = 0.8;
    double c = 0.0;
    double gamma = 0.0;

    void validate() const;
    std::vector<int> tier_sizes() const;
    double delta() const { return static_cast<double>(n) * d; }
};

// Two-tier parameters with per-supplier reliability/congestion and a common
// retailer reliability. All probabilities strictly inside (0,1).
struct HeteroParams {
    int n = 2;
    int m = 2;
    double d = 1.0;
    double c = 0.0;
    double lambda_r = 0.8;
    std::vector<double> lambda_sup;
    std::vector<double> gamma_sup;

    void validate() const;
    double delta() const { return static_cast<double>(n) * d; }
    static HeteroParams from_homogeneous(const ModelParams& p);
};

// Directed two-tier (or multi-tier) network. Tier 1 agents (retailers) hold
// out-links into tier 2, tier t into tier t+1; the top tier implicitly links
// to a never-failing raw-material source, and every retailer faces the
// consumer. Indices are 0-based internally; file formats are 1-based.
// Immutable after construction; all degree/neighborhood queries are cached.
class Network {
public:
    Network(int n, int m, std::vector<std::vector<int>> retailer_links);
    Network(std::vector<int> tier_sizes,
            std::vector<std::vector<std::vector<int>>> links_per_tier);

    int tier_count() const { return static_cast<int>(sizes_.size()); }
    int tier_size(int t) const { return sizes_.at(t - 1); }
    int retailers() const { return sizes_.front(); }
    int suppliers() const { return sizes_.back(); }

    // t in [1, T-1] for out-queries, [2, T] for in-queries.
    const std::vector<int>& out_neighbors(int t, int i) const;
    const std::vector<int>& in_neighbors(int t, int j) const;
    int out_degree(int t, int i) const;
    int in_degree(int t, int j) const;

    // Tier-1 conveniences used by the two-tier closed forms.
    const std::vector<int>& retailer_links(int i) const { return out_neighbors(1, i); }
    int retailer_degree(int i) const { return out_degree(1, i); }
    bool retailer_active(int i) const { return out_degree(1, i) > 0; }
    int active_retailer_count() const { return active_retailers_; }
    // |N(i) ∩ N(i')| for tier-1 agents.
    int overlap(int i, int i2) const;

    // Copy with retailer i's out-neighborhood replaced (deviation helper).
    Network with_retailer_links(int i, std::vector<int> links) const;

    bool operator==(const Network& o) const { return sizes_ == o.sizes_ && links_ == o.links_; }

private:
    void build_caches();

    std::vector<int> sizes_;
    // links_[t-1][i]: sorted out-neighborhood of agent i in tier t, t in [1, T-1]
    std::vector<std::vector<std::vector<int>>> links_;
    // in_[t-1][j]: in-neighborhood of agent j in tier t, t in [2, T]
    std::vector<std::vector<std::vector<int>>> in_;
    std::vector<std::vector<int>> overlap_;  // tier-1 pairwise overlaps
    int active_retailers_ = 0;
};

enum class NetClass { Empty, Cone, Parallel, Zee, Full, Other };

std::string to_string(NetClass c);
std::optional<NetClass> net_class_from_string(const std::string& s);

// Shape of a 2x2 network plus, when the shape is one of the named ones, the
// supplier/retailer relabelings mapping it onto the canonical representative
// (cone {{0},{0}}, parallel {{0},{1}}, zee {{0},{0,1}}, full {{0,1},{0,1}}).
// perm[k] = index of agent k after relabeling.
struct Classification {
    NetClass label = NetClass::Other;
    std::optional<std::array<int, 2>> supplier_perm;
    std::optional<std::array<int, 2>> retailer_perm;
};

Classification classify_2x2(const Network& net);

Network make_empty_2x2();
Network make_cone_2x2(int supplier = 0);
Network make_parallel_2x2();
Network make_zee_2x2();
Network make_full_2x2();

}  // namespace scn
