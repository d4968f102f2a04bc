use super::IntPolynomial;

/// `Δ_k` with `Δ_0 = 1`, `Δ_1 = x` and `x Δ_k = Δ_{k+1} + Δ_{k-1}`.
pub fn chebyshev_delta(k: usize) -> IntPolynomial {
    let x = IntPolynomial::x();
    let (mut prev, mut cur) = (IntPolynomial::from_i64s(&[1]), x.clone());
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = &(&x * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}
