use crate::error::{GroupError, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime `p` with `q = p^k`, if `q` is a prime power.
pub fn prime_power_base(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
    }
    (r == 1).then_some(p)
}

/// Membership in the prime set used for the direct-power construction:
/// `p ≥ 7`, `p ∉ {11, 23}`, and `p ≠ (q^d - 1)/(q - 1)` for every prime
/// power `q` and `d ≥ 2`.
pub fn is_p_prime(p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(GroupError::InvalidArgument(format!("{p} is not prime")));
    }
    if p < 7 || p == 11 || p == 23 {
        return Ok(false);
    }
    // d = 2 gives q + 1, the smallest value for each q.
    for q in (2..p).filter(|&q| prime_power_base(q).is_some()) {
        let mut value = 1 + q;
        while value <= p {
            if value == p {
                return Ok(false);
            }
            value = value * q + 1;
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_powers() {
        assert!(is_prime(2) && is_prime(19) && !is_prime(1) && !is_prime(21));
        assert_eq!(prime_power_base(16), Some(2));
        assert_eq!(prime_power_base(18), None);
        assert_eq!(prime_power_base(1), None);
    }

    #[test]
    fn projective_line_sizes_are_excluded() {
        // 13 = 1 + 3 + 9, 31 = 1 + 2 + 4 + 8 + 16
        assert!(!is_p_prime(13).unwrap());
        assert!(!is_p_prime(31).unwrap());
        assert!(is_p_prime(19).unwrap());
        assert!(is_p_prime(12).is_err());
    }
}
