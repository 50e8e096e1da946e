//! Classical Tor computed straight from invariant factors, for cross-checking the derived
//! 2-functor machinery.

use num_bigint::BigInt;

use super::{AbHom, FgAbPresentation, IntMatrix};

fn multiplication(b: &FgAbPresentation, d: &BigInt) -> AbHom {
    AbHom::new(b.clone(), b.clone(), IntMatrix::identity(b.gens()).scale(d)).expect("scalar maps are well defined")
}

fn direct_sum_all(parts: impl IntoIterator<Item = FgAbPresentation>) -> FgAbPresentation {
    parts.into_iter().fold(FgAbPresentation::trivial(), |acc, g| acc.direct_sum(&g))
}

/// `Tor_1(A, B)`: with `A = ⊕ Z/d_i ⊕ Z^r` resolved by `0 -> Z^m --diag(d)--> Z^m -> A`,
/// tensoring with `B` leaves `⊕ ker(d_i : B -> B)`.
pub fn tor1_oracle(a: &FgAbPresentation, b: &FgAbPresentation) -> FgAbPresentation {
    let parts = a.canonical().factors.iter().map(|d| multiplication(b, d).kernel().0);
    let sum = direct_sum_all(parts);
    sum.canonical().presentation()
}

/// `A ⊗ B = ⊕ B/d_i B ⊕ B^r`.
pub fn tensor_oracle(a: &FgAbPresentation, b: &FgAbPresentation) -> FgAbPresentation {
    let c = a.canonical();
    let torsion = c.factors.iter().map(|d| multiplication(b, d).cokernel().0);
    let free = (0..c.free_rank).map(|_| b.clone());
    direct_sum_all(torsion.chain(free)).canonical().presentation()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tor_of_cyclics() {
        let t = tor1_oracle(&FgAbPresentation::cyclic(6), &FgAbPresentation::cyclic(4));
        assert_eq!(t.canonical().to_string(), "Z/2");
        let t = tor1_oracle(&FgAbPresentation::free(1), &FgAbPresentation::cyclic(4));
        assert!(t.is_trivial());
        let a = FgAbPresentation::cyclic(2).direct_sum(&FgAbPresentation::free(1));
        let t = tor1_oracle(&a, &FgAbPresentation::cyclic(2));
        assert_eq!(t.canonical().to_string(), "Z/2");
    }

    #[test]
    fn tensor_of_cyclics() {
        let t = tensor_oracle(&FgAbPresentation::cyclic(6), &FgAbPresentation::cyclic(4));
        assert_eq!(t.canonical().to_string(), "Z/2");
        let t = tensor_oracle(&FgAbPresentation::free(2), &FgAbPresentation::cyclic(3));
        assert_eq!(t.canonical().to_string(), "Z/3 + Z/3");
    }
}
