#pragma once

#include <cstddef>
#include <utility>

#include "powops/fp_matrix.hpp"
#include "powops/presented_module.hpp"

namespace powops {

/// A homomorphism of presented modules. The matrix acts on generator
/// columns: generator j of the source maps to Σᵢ matrix(i, j) · (target
/// generator i), so composition is plain matrix multiplication.
///
/// Construction certifies well-definedness: the image of every source
/// relation must lie in the Z_p-span of the target relations. The first
/// violating relation index is reported otherwise.
class ModuleMap {
  public:
    ModuleMap(PresentedModule source, PresentedModule target, IntMat matrix)
        : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
        require_same_prime(source_.prime(), target_.prime());
        if (matrix_.rows() != target_.num_generators() ||
            matrix_.cols() != source_.num_generators()) {
            throw std::invalid_argument("ModuleMap: matrix shape does not match modules");
        }
        const IntMat& rel = source_.relations();
        for (std::size_t r = 0; r < rel.rows(); ++r) {
            if (!target_.in_relation_span(matrix_.apply(rel.row(r)))) {
                throw IllDefinedMapError(
                    r, "ModuleMap: image of relation " + std::to_string(r) +
                           " is not in the span of the target relations");
            }
        }
    }

    static ModuleMap identity(const PresentedModule& m) {
        return ModuleMap(m, m, IntMat::identity(m.num_generators()));
    }

    /// Multiplication by the scalar c.
    static ModuleMap scalar(const PresentedModule& m, const Int& c) {
        IntMat mat(m.num_generators(), m.num_generators());
        for (std::size_t i = 0; i < m.num_generators(); ++i) {
            mat(i, i) = c;
        }
        return ModuleMap(m, m, std::move(mat));
    }

    const PresentedModule& source() const noexcept { return source_; }
    const PresentedModule& target() const noexcept { return target_; }
    const IntMat& matrix() const noexcept { return matrix_; }
    const PrimeContext& prime() const noexcept { return source_.prime(); }

  private:
    PresentedModule source_;
    PresentedModule target_;
    IntMat matrix_;
};

/// g ∘ f; the presentations at the seam must agree exactly.
inline ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
    if (!(f.target() == g.source())) {
        throw std::invalid_argument("compose: inner presentations do not match");
    }
    return ModuleMap(f.source(), g.target(), g.matrix() * f.matrix());
}

/// Cokernel of f: the target generators, modulo the target relations plus
/// the images of the source generators.
inline PresentedModule map_cokernel(const ModuleMap& f) {
    return PresentedModule(f.prime(), f.target().num_generators(),
                           vstack(f.target().relations(), f.matrix().transposed()));
}

/// Whether F_p ⊗ f is surjective: the target relations and the image
/// columns must span the whole target mod p. For finitely generated
/// modules this detects surjectivity of f itself.
inline bool nakayama_surjective(const ModuleMap& f) {
    const IntMat stacked = vstack(f.target().relations(), f.matrix().transposed());
    return FpMat::reduce(stacked, f.prime()).rank() == f.target().num_generators();
}

/// Whether f is bijective: surjective (zero cokernel) between abstractly
/// isomorphic modules. A surjection of finitely generated modules over a
/// local ring with equal normal forms is automatically injective.
inline bool is_iso_map(const ModuleMap& f) {
    return map_cokernel(f).normal_form().is_zero() &&
           f.source().normal_form() == f.target().normal_form();
}

/// Z/p ⊗ f. Tensoring with the one-generator module Z/p leaves generator
/// indices and the matrix unchanged; only the relations grow.
inline ModuleMap residue_tensor(const ModuleMap& f) {
    const PresentedModule res = PresentedModule::cyclic(f.prime(), 1);
    return ModuleMap(tensor(res, f.source()), tensor(res, f.target()), f.matrix());
}

}  // namespace powops
