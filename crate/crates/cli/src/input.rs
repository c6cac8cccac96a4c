//! Parsing of points, integer ranges and x grids.

use mkz_core::exact::{rational_to_f64, BigInt, BigRational};

/// A point given on the command line. Fractions stay exact.
#[derive(Debug, Clone, PartialEq)]
pub enum Point {
    Decimal(f64),
    Fraction(BigRational),
}

pub fn parse_point(s: &str) -> Result<Point, String> {
    let s = s.trim();
    if s.contains('/') {
        return parse_fraction(s).map(Point::Fraction);
    }
    let v: f64 = s.parse().map_err(|_| format!("invalid number '{s}'"))?;
    if !v.is_finite() {
        return Err(format!("invalid number '{s}'"));
    }
    Ok(Point::Decimal(v))
}

fn parse_int(s: &str) -> Result<BigInt, String> {
    let t = s.trim();
    let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("invalid integer '{s}'"));
    }
    t.parse().map_err(|_| format!("invalid integer '{s}'"))
}

fn parse_fraction(s: &str) -> Result<BigRational, String> {
    let (p, q) = s
        .split_once('/')
        .ok_or_else(|| format!("invalid fraction '{s}'"))?;
    let (p, q) = (parse_int(p)?, parse_int(q)?);
    if q == BigInt::from(0) {
        return Err(format!("zero denominator in '{s}'"));
    }
    Ok(BigRational::new(p, q))
}

/// Exact value of a plain decimal literal such as `-0.05` or `3` or `1e-2`.
fn parse_decimal_exact(s: &str) -> Result<BigRational, String> {
    let bad = || format!("invalid decimal '{s}'");
    let t = s.trim();
    let (body, exp) = match t.split_once(['e', 'E']) {
        Some((b, e)) => (b, e.parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, body) = match body.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, body.strip_prefix('+').unwrap_or(body)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let mut digits: BigInt = format!("0{int_part}{frac_part}")
        .parse()
        .map_err(|_| bad())?;
    if neg {
        digits = -digits;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        BigRational::from_integer(digits * ten.pow(scale as u32))
    } else {
        BigRational::new(digits, ten.pow(scale.unsigned_abs()))
    })
}

fn parse_exact(s: &str) -> Result<BigRational, String> {
    if s.contains('/') {
        parse_fraction(s)
    } else {
        parse_decimal_exact(s)
    }
}

/// Integer set: comma-separated items, each `k` or an inclusive range `a..b`
/// (`a..=b` is accepted too). Order is preserved; duplicates are dropped.
pub fn parse_u32_set(s: &str) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        let num = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("invalid integer '{t}' in '{s}'"))
        };
        if let Some((a, b)) = item.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(format!("empty range '{item}'"));
            }
            out.extend(a..=b);
        } else {
            out.push(num(item)?);
        }
    }
    dedup(&mut out);
    Ok(out)
}

/// x grid: either comma-separated values, or `start:step:stop` expanded in
/// exact arithmetic (inclusive of `stop`), so `0.05:0.05:0.95` yields the
/// doubles nearest to 0.05, 0.10, ..., 0.95.
pub fn parse_x_grid(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [start, step, stop] => {
            let (start, step, stop) = (parse_exact(start)?, parse_exact(step)?, parse_exact(stop)?);
            if step <= BigRational::from_integer(0.into()) {
                return Err(format!("grid step must be positive in '{s}'"));
            }
            let mut out = Vec::new();
            let mut x = start;
            while x <= stop {
                out.push(rational_to_f64(&x));
                if out.len() > 1_000_000 {
                    return Err(format!("grid '{s}' has too many points"));
                }
                x += &step;
            }
            Ok(out)
        }
        [list] => {
            let mut out = Vec::new();
            for item in list.split(',') {
                out.push(match parse_point(item)? {
                    Point::Decimal(v) => v,
                    Point::Fraction(q) => rational_to_f64(&q),
                });
            }
            let mut seen = Vec::new();
            out.retain(|v: &f64| {
                let new = !seen.contains(&v.to_bits());
                seen.push(v.to_bits());
                new
            });
            Ok(out)
        }
        _ => Err(format!("invalid x grid '{s}'")),
    }
}

fn dedup(v: &mut Vec<u32>) {
    let mut seen = std::collections::HashSet::new();
    v.retain(|k| seen.insert(*k));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points() {
        assert_eq!(parse_point("0.3"), Ok(Point::Decimal(0.3)));
        assert_eq!(
            parse_point("1/3"),
            Ok(Point::Fraction(BigRational::new(1.into(), 3.into())))
        );
        assert_eq!(
            parse_point("-2/4"),
            Ok(Point::Fraction(BigRational::new((-1).into(), 2.into())))
        );
        assert!(parse_point("1/0").is_err());
        assert!(parse_point("abc").is_err());
        assert!(parse_point("nan").is_err());
        assert!(parse_point("1/2/3").is_err());
    }

    #[test]
    fn integer_sets() {
        assert_eq!(parse_u32_set("0..3"), Ok(vec![0, 1, 2, 3]));
        assert_eq!(parse_u32_set("1..=2,5"), Ok(vec![1, 2, 5]));
        assert_eq!(parse_u32_set("4"), Ok(vec![4]));
        assert_eq!(parse_u32_set("2,2,1"), Ok(vec![2, 1]));
        assert!(parse_u32_set("3..1").is_err());
        assert!(parse_u32_set("a").is_err());
        assert!(parse_u32_set("-1").is_err());
    }

    #[test]
    fn grids() {
        let g = parse_x_grid("0.05:0.05:0.95").unwrap();
        assert_eq!(g.len(), 19);
        assert_eq!(g[2], 0.15);
        assert_eq!(g[18], 0.95);
        assert_eq!(parse_x_grid("0.5,1/4").unwrap(), vec![0.5, 0.25]);
        assert_eq!(parse_x_grid("1e-1:1e-1:3e-1").unwrap(), vec![0.1, 0.2, 0.3]);
        assert!(parse_x_grid("0:0:1").is_err());
        assert!(parse_x_grid("0:1").is_err());
    }

    #[test]
    fn exact_decimals() {
        assert_eq!(
            parse_decimal_exact("-0.05").unwrap(),
            BigRational::new((-1).into(), 20.into())
        );
        assert_eq!(
            parse_decimal_exact("2e3").unwrap(),
            BigRational::from_integer(2000.into())
        );
        assert!(parse_decimal_exact(".").is_err());
        assert!(parse_decimal_exact("1.2.3").is_err());
    }
}
