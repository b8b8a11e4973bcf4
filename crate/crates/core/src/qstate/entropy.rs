/// Shannon entropy in bits of a probability vector, with `0·log₂0 = 0`.
pub fn shannon_entropy<I>(probs: I) -> f64
where
    I: IntoIterator<Item = f64>,
{
    let h: f64 = probs
        .into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum();
    // a single unit probability gives -0.0
    h.max(0.0)
}

/// `H(p) = -p log₂ p - (1-p) log₂(1-p)`.
pub fn binary_entropy(p: f64) -> f64 {
    shannon_entropy([p, 1.0 - p])
}
