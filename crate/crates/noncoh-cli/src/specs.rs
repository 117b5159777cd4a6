//! Parsers for the small spec grammars the CLI accepts: states, bases, and
//! numeric grids.

use noncoh::qstate::BlochVector;
use noncoh::thermo::coherence_basis;
use noncoh::{DensityMatrix, NOBasis, PureQubit};
use num_complex::Complex64;

/// `x,y,z` (Bloch triple) or `re,im,re,im` (amplitude quadruple), with an
/// optional `bloch:`/`amps:` prefix.
pub fn parse_state(spec: &str) -> Result<DensityMatrix, String> {
    let (tag, body) = split_tag(spec);
    let nums = parse_numbers(body)?;
    match (tag, nums.len()) {
        (None | Some("bloch"), 3) => {
            let v = BlochVector::new(nums[0], nums[1], nums[2]);
            DensityMatrix::from_bloch(&v).map_err(|e| e.to_string())
        }
        (None | Some("amps"), 4) => {
            let psi = PureQubit::normalized(
                Complex64::new(nums[0], nums[1]),
                Complex64::new(nums[2], nums[3]),
            )
            .map_err(|e| e.to_string())?;
            Ok(psi.density())
        }
        _ => Err(format!(
            "state spec '{spec}': want 3 numbers (Bloch) or 4 (amplitudes)"
        )),
    }
}

/// Two amplitude pairs `re,im,re,im;re,im,re,im`, or the symmetric family
/// `sym:alpha[,phi]` whose half-angle is `alpha` and whose chord sits below
/// the equator.
pub fn parse_basis(spec: &str) -> Result<NOBasis, String> {
    if let Some(body) = spec.strip_prefix("sym:") {
        let nums = parse_numbers(body)?;
        let (alpha, phi) = match nums.len() {
            1 => (nums[0], 0.0),
            2 => (nums[0], nums[1]),
            _ => return Err(format!("basis spec '{spec}': want sym:alpha[,phi]")),
        };
        return coherence_basis(alpha, phi)
            .map(|fam| fam.basis)
            .map_err(|e| e.to_string());
    }
    let halves: Vec<&str> = spec.split(';').collect();
    if halves.len() != 2 {
        return Err(format!(
            "basis spec '{spec}': want 're,im,re,im;re,im,re,im' or 'sym:alpha[,phi]'"
        ));
    }
    let mut kets = Vec::with_capacity(2);
    for half in halves {
        let nums = parse_numbers(half)?;
        if nums.len() != 4 {
            return Err(format!("basis component '{half}': want 4 numbers"));
        }
        let ket = PureQubit::normalized(
            Complex64::new(nums[0], nums[1]),
            Complex64::new(nums[2], nums[3]),
        )
        .map_err(|e| e.to_string())?;
        kets.push(ket);
    }
    NOBasis::new(kets[0], kets[1]).map_err(|e| e.to_string())
}

/// `lo:hi:step` inclusive grid; grid points are snapped to 12 decimals so
/// accumulated float error does not leak into printed output.
pub fn parse_step_grid(spec: &str) -> Result<Vec<f64>, String> {
    let parts = parse_colon_numbers(spec)?;
    let [lo, hi, step] = parts[..] else {
        return Err(format!("grid spec '{spec}': want lo:hi:step"));
    };
    if step <= 0.0 || hi < lo {
        return Err(format!("grid spec '{spec}': empty or descending range"));
    }
    let count = ((hi - lo) / step + 0.5).floor() as usize + 1;
    Ok((0..count)
        .map(|i| snap(lo + i as f64 * step))
        .filter(|r| *r <= hi + 1e-12)
        .collect())
}

/// `lo:hi:count` linear grid, or a single value `v`. Values are taken
/// exactly as computed (no snapping; the count parameterization is already
/// stable).
pub fn parse_count_grid(spec: &str) -> Result<Vec<f64>, String> {
    let parts = parse_colon_numbers(spec)?;
    match parts[..] {
        [v] => Ok(vec![v]),
        [lo, hi, count] => {
            let n = count as usize;
            if n == 0 || (count - n as f64).abs() > 1e-9 {
                return Err(format!(
                    "grid spec '{spec}': count must be a positive integer"
                ));
            }
            if n == 1 {
                return Ok(vec![lo]);
            }
            Ok((0..n)
                .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
                .collect())
        }
        _ => Err(format!(
            "grid spec '{spec}': want lo:hi:count or a single value"
        )),
    }
}

/// Comma-separated list of numbers.
pub fn parse_numbers(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| format!("not a number: '{}'", tok.trim()))
        })
        .collect()
}

fn parse_colon_numbers(s: &str) -> Result<Vec<f64>, String> {
    s.split(':')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| format!("not a number: '{}'", tok.trim()))
        })
        .collect()
}

fn split_tag(spec: &str) -> (Option<&str>, &str) {
    match spec.split_once(':') {
        Some((tag, rest)) if tag.chars().all(char::is_alphabetic) => (Some(tag), rest),
        _ => (None, spec),
    }
}

fn snap(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}
