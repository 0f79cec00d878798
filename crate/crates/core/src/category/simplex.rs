//! The simplex category: monotone maps between finite ordinals.

use super::Morphism;

pub(super) fn is_valid(cod: u32, values: &[u32]) -> bool {
    !values.is_empty() && values.windows(2).all(|w| w[0] <= w[1]) && values.iter().all(|&v| v <= cod)
}

pub(super) fn is_surjective(cod: u32, values: &[u32]) -> bool {
    values.first() == Some(&0)
        && values.last() == Some(&cod)
        && values.windows(2).all(|w| w[1] - w[0] <= 1)
}

pub(super) fn is_injective(values: &[u32]) -> bool {
    values.windows(2).all(|w| w[0] < w[1])
}

/// Image factorization: a surjection onto the image followed by its inclusion.
pub(super) fn factorize(cod: u32, values: &[u32]) -> (Morphism, Morphism) {
    let mut image: Vec<u32> = values.to_vec();
    image.dedup();
    let k = image.len() as u32 - 1;
    let mut minus = Vec::with_capacity(values.len());
    let mut j = 0u32;
    for (i, &v) in values.iter().enumerate() {
        if i > 0 && v != values[i - 1] {
            j += 1;
        }
        minus.push(j);
    }
    (Morphism::Simplex { cod: k, values: minus }, Morphism::Simplex { cod, values: image })
}

/// Monotone maps `[n] → [m]` in lexicographic order.
pub(super) fn hom(n: u32, m: u32) -> Vec<Morphism> {
    fn go(len: usize, m: u32, lo: u32, cur: &mut Vec<u32>, out: &mut Vec<Morphism>) {
        if cur.len() == len {
            out.push(Morphism::Simplex { cod: m, values: cur.clone() });
            return;
        }
        for v in lo..=m {
            cur.push(v);
            go(len, m, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n as usize + 1, m, 0, &mut Vec::new(), &mut out);
    out
}
