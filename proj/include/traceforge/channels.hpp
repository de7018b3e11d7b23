#pragma once

// completely positive maps in kraus form, superoperator matrices, choi
// matrices, dilations, and seeded channel sampling

#include <optional>
#include <string>
#include <vector>

#include "traceforge/linalg.hpp"

namespace traceforge {

namespace tol_chan {
constexpr double unital = 1e-10;
constexpr double trace_preserving = 1e-10;
constexpr double choi_roundtrip = 1e-9;
constexpr double dilation = 1e-9;
} // namespace tol_chan

//---------------------------------------------------------------- kraus form

// map X (in x in) -> sum_j V_j^* X V_j (out x out); each V_j is in x out
class KrausChannel {
public:
    KrausChannel(int in_dim, int out_dim, std::vector<Matrix> kraus);

    int in_dim() const { return in_; }
    int out_dim() const { return out_; }
    const std::vector<Matrix>& kraus() const { return kraus_; }

    Matrix apply(const Matrix& x) const;

    // sum V^*V = I_out within tolerance
    bool unital() const;
    double unital_defect() const;
    // sum VV^* = I_in within tolerance
    bool trace_preserving() const;
    double tp_defect() const;

    KrausChannel adjoint() const;

private:
    int in_, out_;
    std::vector<Matrix> kraus_;
    mutable std::optional<double> unital_defect_, tp_defect_;
};

//---------------------------------------------------------------- superoperators

enum class MapTag { kraus_backed, transpose_component, custom };

// action on column-stacked vec(X); out^2 x in^2
class LinearMatrixMap {
public:
    LinearMatrixMap(int in_dim, int out_dim, Matrix action, MapTag tag);

    static LinearMatrixMap from_kraus(const KrausChannel& phi);

    int in_dim() const { return in_; }
    int out_dim() const { return out_; }
    const Matrix& action() const { return action_; }
    MapTag tag() const { return tag_; }
    bool hermiticity_preserving() const { return herm_preserving_; }

    Matrix apply(const Matrix& x) const;
    LinearMatrixMap adjoint() const;

private:
    int in_, out_;
    Matrix action_;
    MapTag tag_;
    bool herm_preserving_;
};

Vector vec(const Matrix& x);
Matrix unvec(const Vector& v, int rows, int cols);

//---------------------------------------------------------------- choi

struct NotCPError : DomainError {
    NotCPError(const std::string& msg, double eig)
        : DomainError(msg), eigenvalue(eig) {}
    double eigenvalue;
};

Matrix choi_matrix(const KrausChannel& phi);
Matrix choi_matrix(const LinearMatrixMap& map);

// eigendecomposes the choi matrix; a negative eigenvalue below -cp_tol
// raises NotCPError carrying it
std::vector<Matrix> kraus_from_choi(const Matrix& choi, int in_dim, int out_dim,
                                    double cp_tol = tol_chan::choi_roundtrip);

struct KPositivityResult {
    bool exact = false;     // decided by the choi criterion, not sampling
    bool violated = false;  // a re-verified violating input was found
    double worst = 0.0;     // most negative output eigenvalue seen (or choi min)
    Matrix witness;         // violating psd input on C^k (x) C^in, when violated
    std::string note;
};

// positivity of id_k (x) map; k >= min(in, out) is decided exactly through
// the choi spectrum, smaller k is probed by sampling (never reports a
// violation without re-verifying the witness)
KPositivityResult is_k_positive(const LinearMatrixMap& map, int k, int samples,
                                Rng& rng);

//---------------------------------------------------------------- embeddings

// I_m (x) X on the m-fold block space
Matrix block_embed(const Matrix& x, int m);
// adjoint of block_embed: sum of the m diagonal blocks
Matrix block_embed_adjoint(const Matrix& y, int m);
// upper-left q x q corner
Matrix corner(const Matrix& a, int q);
// zero-pad a q x q block into the upper-left corner of a p x p matrix
Matrix corner_embed(const Matrix& x, int p);

//---------------------------------------------------------------- dilation

struct StinespringFactorization {
    int env_dim = 0;   // number of blocks in the dilation space
    Matrix unitary;    // (env_dim * in_dim) square
    double corner_defect = 0.0;
    double adjoint_defect = 0.0;
};

// unital channel as a corner of a unitary conjugation on a block space;
// verifies both the forward corner form and the adjoint zero-pad form
StinespringFactorization stinespring_factorize(const KrausChannel& phi,
                                               std::uint64_t seed);

// m^2 unitaries on C^m (x) C^n whose average conjugation equals
// (1/m) block_embed(block_embed_adjoint(.)); each commutes with I_m (x) A
std::vector<Matrix> uhlmann_unitaries(int m, int n);

//---------------------------------------------------------------- mixing

// (1-eps) phi + eps * (tr . / out) I; requires a trace-preserving channel,
// output spectrum floored at eps * tr / out
KrausChannel smooth(const KrausChannel& phi, double eps);

//---------------------------------------------------------------- fixed maps

// "full_depolarizer" X -> tr[X] I/n, "transpose" X -> X^T,
// "choi_schwarz" (n = 2 only) X -> X^T/2 + tr[X] I/4, "identity"
LinearMatrixMap named_map(const std::string& name, int n);

// tr[X] I_out / in_dim with n_in * n_out kraus operators; unital for any
// dimensions, trace preserving only when square
KrausChannel depolarizer_kraus(int in_dim, int out_dim);

//---------------------------------------------------------------- sampling

enum class ChannelKind {
    cptp,          // haar isometry sliced into out x in blocks
    cp_unital,     // haar isometry sliced into in x out blocks
    cp_unital_tp,  // mixed-unitary, square only
};

KrausChannel sample_channel(ChannelKind kind, int in_dim, int out_dim,
                            int n_kraus, Rng& rng);

} // namespace traceforge
