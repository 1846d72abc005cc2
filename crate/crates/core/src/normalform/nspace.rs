use crate::error::{Error, Result};
use crate::series::{Mono, WSeries};

/// Exceptional slots `(k, l, α, β)` of the normal-form conditions (besides the families
/// `Φ_{kl00}, Φ_{kl10}, Φ_{kl20}`), listed with the holomorphic side first.
const EXCEPTIONAL: [[u32; 4]; 5] = [[3, 0, 0, 1], [4, 0, 0, 1], [3, 0, 1, 1], [4, 0, 1, 1], [3, 0, 3, 0]];

/// True if the coefficient of this monomial must vanish in normal form (the slot belongs
/// to the range of the homological operator).
pub fn is_constrained(m: Mono) -> bool {
    let [k, l, a, b, _] = m.exps();
    if (b == 0 && a <= 2) || (l == 0 && k <= 2) {
        return true;
    }
    EXCEPTIONAL.iter().any(|e| *e == [k, l, a, b] || *e == [a, b, k, l])
}

/// Checks the normal-form conditions; returns the violating exponents `[k, l, α, β, m]`.
pub fn is_in_normal_form(phi: &WSeries) -> (bool, Vec<[u32; 5]>) {
    let bad: Vec<[u32; 5]> = phi.iter().filter(|(m, _)| is_constrained(*m)).map(|(m, _)| m.exps()).collect();
    (bad.is_empty(), bad)
}

/// Splits `ψ` into its `N`-part (unconstrained slots) and the rest.
pub fn project_to_n(psi: &WSeries) -> (WSeries, WSeries) {
    (psi.filter(|m| !is_constrained(m)), psi.filter(is_constrained))
}

/// Monomials not divisible by `ζζ̄`, i.e. `Φ(z,ζ,z̄,0,u) + Φ(z,0,z̄,ζ̄,u) − Φ(z,0,z̄,0,u)`.
pub fn extract_distinguished(phi: &WSeries) -> Result<WSeries> {
    let d = phi.filter(|m| m.l() == 0 || m.beta() == 0);
    validate_distinguished(&d.filter(|m| m.beta() == 0))?;
    Ok(d)
}

/// Checks that `χ` (terms with `β = 0`) is an admissible distinguished part: real
/// `ζ = 0` slice, `z̄`-degree at least 3, and the five exceptional vanishings.
pub fn validate_distinguished(chi: &WSeries) -> Result<()> {
    let mut bad = Vec::new();
    for (m, _) in chi.iter() {
        let [k, l, a, b, _] = m.exps();
        if b != 0 {
            bad.push(format!("{:?} has a ζ̄ factor", m));
        } else if a <= 2 {
            bad.push(format!("{:?} has z̄-degree below 3", m));
        } else if [[0, 1, 3], [0, 1, 4], [1, 1, 3], [1, 1, 4], [3, 0, 3]].contains(&[k, l, a]) {
            bad.push(format!("{:?} is an excluded slot", m));
        }
    }
    let slice = chi.filter(|m| m.l() == 0);
    if !slice.is_real() {
        bad.push("the ζ = 0 slice is not real".into());
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(format!("not a distinguished part: {}", bad.join("; "))))
    }
}
