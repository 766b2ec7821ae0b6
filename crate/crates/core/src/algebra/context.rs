use super::spec::{violation, AlgebraSpec, BimoduleSpec, LawViolation};
use super::tensor::Tensor3;
use crate::error::{Error, Result};
use crate::ring::{Ring, Scalar};

/// `(A, B, M, N, Φ, Ψ)`: `M` is an `(A, B)`-bimodule, `N` a `(B, A)`-bimodule,
/// `phi[m][n]` lies in `A` and `psi[n][m]` lies in `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoritaContext {
    pub ring: Ring,
    pub a: AlgebraSpec,
    pub b: AlgebraSpec,
    pub m: BimoduleSpec,
    pub n: BimoduleSpec,
    pub phi: Tensor3,
    pub psi: Tensor3,
}

impl MoritaContext {
    pub fn dims(&self) -> [usize; 4] {
        [self.a.dim, self.m.dim, self.n.dim, self.b.dim]
    }

    pub fn phi(&self, m: &[Scalar], n: &[Scalar]) -> Vec<Scalar> {
        self.phi.apply(m, n)
    }

    pub fn psi(&self, n: &[Scalar], m: &[Scalar]) -> Vec<Scalar> {
        self.psi.apply(n, m)
    }

    /// Tensor shapes and ring agreement; errors here are input errors, not axiom failures.
    pub fn check_shapes(&self) -> Result<()> {
        let [da, dm, dn, db] = self.dims();
        for (name, alg) in [("A", &self.a), ("B", &self.b)] {
            if alg.ring != self.ring {
                return Err(Error::Shape(format!("algebra {name} over {}", alg.ring)));
            }
            if alg.mul.shape() != (alg.dim, alg.dim, alg.dim) || alg.unit.len() != alg.dim {
                return Err(Error::Shape(format!("algebra {name} tensor/unit shape")));
            }
        }
        self.m.check_shape("M", da, db)?;
        self.n.check_shape("N", db, da)?;
        if self.phi.shape() != (dm, dn, da) {
            return Err(Error::Shape(format!("pairing M×N→A has shape {:?}", self.phi.shape())));
        }
        if self.psi.shape() != (dn, dm, db) {
            return Err(Error::Shape(format!("pairing N×M→B has shape {:?}", self.psi.shape())));
        }
        let tensors = [
            &self.m.left,
            &self.m.right,
            &self.n.left,
            &self.n.right,
            &self.phi,
            &self.psi,
        ];
        if tensors.iter().any(|t| t.ring() != self.ring) {
            return Err(Error::Shape("tensor over a different ring".into()));
        }
        Ok(())
    }

    /// All context axioms on basis tuples, in a fixed order: algebra laws,
    /// bimodule laws, pairing bimodule-homomorphism and balancing laws, then the
    /// two associativity diagrams. `Err(Error)` for malformed or degenerate input,
    /// `Ok(Err(violation))` for the first failing law.
    pub fn check_axioms(&self) -> Result<std::result::Result<(), LawViolation>> {
        self.check_shapes()?;
        if self.m.dim == 0 && self.n.dim == 0 {
            return Err(Error::InvalidParams(
                "at least one of the bimodules M, N must be nonzero".into(),
            ));
        }
        Ok(self.scan_laws())
    }

    fn scan_laws(&self) -> std::result::Result<(), LawViolation> {
        self.a.check_laws("A")?;
        self.b.check_laws("B")?;
        self.m.check_laws("M", &self.a, &self.b)?;
        self.n.check_laws("N", &self.b, &self.a)?;
        self.check_phi()?;
        self.check_psi()?;
        self.check_diagrams()
    }

    fn check_phi(&self) -> std::result::Result<(), LawViolation> {
        let r = self.ring;
        let [da, dm, dn, db] = self.dims();
        for m in 0..dm {
            let em = r.unit_vector(dm, m);
            for n in 0..dn {
                let en = r.unit_vector(dn, n);
                let mn = self.phi(&em, &en);
                for a in 0..da {
                    let ea = r.unit_vector(da, a);
                    let lhs = self.phi(&self.m.act_left(&ea, &em), &en);
                    if lhs != self.a.mul(&ea, &mn) {
                        return Err(violation("pairing M×N→A: left A-linearity", &[a, m, n]));
                    }
                    let lhs = self.phi(&em, &self.n.act_right(&en, &ea));
                    if lhs != self.a.mul(&mn, &ea) {
                        return Err(violation("pairing M×N→A: right A-linearity", &[m, n, a]));
                    }
                }
                for b in 0..db {
                    let eb = r.unit_vector(db, b);
                    let lhs = self.phi(&self.m.act_right(&em, &eb), &en);
                    let rhs = self.phi(&em, &self.n.act_left(&eb, &en));
                    if lhs != rhs {
                        return Err(violation("pairing M×N→A: B-balanced", &[m, b, n]));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_psi(&self) -> std::result::Result<(), LawViolation> {
        let r = self.ring;
        let [da, dm, dn, db] = self.dims();
        for n in 0..dn {
            let en = r.unit_vector(dn, n);
            for m in 0..dm {
                let em = r.unit_vector(dm, m);
                let nm = self.psi(&en, &em);
                for b in 0..db {
                    let eb = r.unit_vector(db, b);
                    let lhs = self.psi(&self.n.act_left(&eb, &en), &em);
                    if lhs != self.b.mul(&eb, &nm) {
                        return Err(violation("pairing N×M→B: left B-linearity", &[b, n, m]));
                    }
                    let lhs = self.psi(&en, &self.m.act_right(&em, &eb));
                    if lhs != self.b.mul(&nm, &eb) {
                        return Err(violation("pairing N×M→B: right B-linearity", &[n, m, b]));
                    }
                }
                for a in 0..da {
                    let ea = r.unit_vector(da, a);
                    let lhs = self.psi(&self.n.act_right(&en, &ea), &em);
                    let rhs = self.psi(&en, &self.m.act_left(&ea, &em));
                    if lhs != rhs {
                        return Err(violation("pairing N×M→B: A-balanced", &[n, a, m]));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_diagrams(&self) -> std::result::Result<(), LawViolation> {
        let r = self.ring;
        let [_, dm, dn, _] = self.dims();
        for m in 0..dm {
            let em = r.unit_vector(dm, m);
            for n in 0..dn {
                let en = r.unit_vector(dn, n);
                let mn = self.phi(&em, &en);
                for m2 in 0..dm {
                    let em2 = r.unit_vector(dm, m2);
                    let lhs = self.m.act_left(&mn, &em2);
                    let rhs = self.m.act_right(&em, &self.psi(&en, &em2));
                    if lhs != rhs {
                        return Err(violation("diagram (mn)m' = m(nm')", &[m, n, m2]));
                    }
                }
            }
        }
        for n in 0..dn {
            let en = r.unit_vector(dn, n);
            for m in 0..dm {
                let em = r.unit_vector(dm, m);
                let nm = self.psi(&en, &em);
                for n2 in 0..dn {
                    let en2 = r.unit_vector(dn, n2);
                    let lhs = self.n.act_left(&nm, &en2);
                    let rhs = self.n.act_right(&en, &self.phi(&em, &en2));
                    if lhs != rhs {
                        return Err(violation("diagram (nm)n' = n(mn')", &[n, m, n2]));
                    }
                }
            }
        }
        Ok(())
    }

    /// Same context with the pairing M×N→A multiplied by `c`.
    pub fn with_scaled_phi(&self, c: &Scalar) -> MoritaContext {
        MoritaContext {
            phi: self.phi.scale(c),
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builders::full_matrix;

    #[test]
    fn full_matrix_passes() {
        let f5 = Ring::PrimeField(5);
        let ctx = full_matrix(3, 1, f5).unwrap();
        assert_eq!(ctx.check_axioms().unwrap(), Ok(()));
    }

    #[test]
    fn doubled_phi_fails_on_first_diagram() {
        let f5 = Ring::PrimeField(5);
        let ctx = full_matrix(3, 1, f5).unwrap().with_scaled_phi(&f5.from_i64(2));
        let v = ctx.check_axioms().unwrap().unwrap_err();
        assert_eq!(v.law, "diagram (mn)m' = m(nm')");
        assert_eq!(v.indices, vec![0, 0, 0]);
    }

    #[test]
    fn both_modules_zero_is_rejected() {
        let q = Ring::Rational;
        let a = AlgebraSpec::scalars(q);
        let ctx = MoritaContext {
            ring: q,
            a: a.clone(),
            b: a,
            m: BimoduleSpec::zero(q, 1, 1),
            n: BimoduleSpec::zero(q, 1, 1),
            phi: Tensor3::zeros(q, (0, 0, 1)),
            psi: Tensor3::zeros(q, (0, 0, 1)),
        };
        assert!(matches!(ctx.check_axioms(), Err(Error::InvalidParams(_))));
    }
}
