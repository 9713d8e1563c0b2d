//! Exact Bernoulli numbers with a process-wide cache.
//!
//! Even-index values come from tangent numbers (Brent and Harvey), which keeps
//! the whole table in integer arithmetic: `B_2k = (-1)^(k-1) 2k T_k / (4^k (4^k - 1))`.

use std::sync::{OnceLock, RwLock};

use rug::{Float, Integer, Rational};

static EVEN_TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();

fn table() -> &'static RwLock<Vec<Rational>> {
    EVEN_TABLE.get_or_init(|| RwLock::new(vec![Rational::from(1)]))
}

/// Tangent numbers `T_1..=T_n`.
fn tangent_numbers(n: usize) -> Vec<Integer> {
    let mut t = vec![Integer::new(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = Integer::from(1);
    for k in 2..=n {
        t[k] = Integer::from(&t[k - 1] * (k as u32 - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let a = Integer::from(&t[j - 1] * (j - k) as u32);
            let b = Integer::from(&t[j] * (j - k + 2) as u32);
            t[j] = a + b;
        }
    }
    t
}

fn ensure_even(k_max: usize) {
    if table().read().expect("bernoulli cache poisoned").len() > k_max {
        return;
    }
    let mut guard = table().write().expect("bernoulli cache poisoned");
    if guard.len() > k_max {
        return;
    }
    // Rebuild with headroom: tangent numbers are not incremental.
    let n = (k_max + 1).max(2 * guard.len());
    let t = tangent_numbers(n);
    let mut out = Vec::with_capacity(n + 1);
    out.push(Rational::from(1));
    for (k, tk) in t.iter().enumerate().take(n + 1).skip(1) {
        let four_k = Integer::from(1) << (2 * k as u32);
        let den = &four_k * (four_k.clone() - 1u32);
        let num = Integer::from(tk * (2 * k as u32));
        let mut b = Rational::from((num, den));
        if k % 2 == 0 {
            b = -b;
        }
        out.push(b);
    }
    *guard = out;
}

/// Exact `B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Rational {
    match n {
        0 => Rational::from(1),
        1 => Rational::from((-1, 2)),
        n if n % 2 == 1 => Rational::new(),
        n => {
            let k = n / 2;
            ensure_even(k);
            table().read().expect("bernoulli cache poisoned")[k].clone()
        }
    }
}

/// `B_2k / (2k)!` rounded to `prec` bits, the coefficient shape used by every
/// Euler-Maclaurin tail in the crate.
pub fn bernoulli_over_factorial(k: usize, prec: u32) -> Float {
    let b = bernoulli(2 * k);
    let fact = Integer::from(Integer::factorial(2 * k as u32));
    Float::with_val(prec, &b) / Float::with_val(prec, &fact)
}

/// `B_2k` rounded to `prec` bits.
pub fn bernoulli_even_float(k: usize, prec: u32) -> Float {
    Float::with_val(prec, &bernoulli(2 * k))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Standard recurrence `sum_{k=0}^{n} C(n+1, k) B_k = 0`, independent of
    /// the tangent-number route.
    fn bernoulli_by_recurrence(n_max: usize) -> Vec<Rational> {
        let mut b: Vec<Rational> = vec![Rational::from(1)];
        for n in 1..=n_max {
            let mut acc = Rational::new();
            for (k, bk) in b.iter().enumerate() {
                let c = Integer::from(Integer::binomial_u(n as u32 + 1, k as u32));
                acc += Rational::from(bk * &c);
            }
            b.push(-acc / Rational::from(n as u32 + 1));
        }
        b
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), Rational::from(1));
        assert_eq!(bernoulli(1), Rational::from((-1, 2)));
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(4), Rational::from((-1, 30)));
        assert_eq!(bernoulli(7), Rational::new());
    }

    #[test]
    fn b12_matches_recurrence() {
        let rec = bernoulli_by_recurrence(12);
        assert_eq!(rec[12], Rational::from((-691, 2730)));
        assert_eq!(bernoulli(12), rec[12]);
    }

    #[test]
    fn table_agrees_with_recurrence_through_60() {
        let rec = bernoulli_by_recurrence(60);
        for (n, expected) in rec.iter().enumerate().skip(2) {
            assert_eq!(&bernoulli(n), expected, "B_{n}");
        }
    }

    #[test]
    fn cache_growth_is_consistent() {
        let before = bernoulli(20);
        let _ = bernoulli(400);
        assert_eq!(bernoulli(20), before);
        // sign alternates on even indices
        assert!(bernoulli(398) > 0);
        assert!(bernoulli(400) < 0);
    }

    #[test]
    fn concurrent_readers() {
        let handles: Vec<_> = (0..8)
            .map(|i| std::thread::spawn(move || bernoulli(50 + 20 * i)))
            .collect();
        for (i, h) in handles.into_iter().enumerate() {
            assert_eq!(h.join().unwrap(), bernoulli(50 + 20 * i));
        }
    }
}
