//! LaTeX rendering and parsing for polynomial cells, plus csv field
//! quoting. The LaTeX dialect is the one the tables print: ascending
//! degree, coefficient 1 omitted, exponents braced only when they need
//! more than one character.

use num_bigint::BigInt;
use qcat::poly::{MultiPoly, UniPoly};

pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn pow_latex(e: usize) -> String {
    if e < 10 {
        format!("^{e}")
    } else {
        format!("^{{{e}}}")
    }
}

/// Variable name for position i (0-based) among mu variables, LaTeX form.
fn latex_var(mu: usize, i: usize) -> String {
    match mu {
        1 => "q".to_string(),
        2 => ["q", "p"][i].to_string(),
        _ if i + 1 < 10 => format!("q_{}", i + 1),
        _ => format!("q_{{{}}}", i + 1),
    }
}

pub fn latex_uni(p: &UniPoly, var: &str) -> String {
    let mut out = String::new();
    for (e, c) in p.coeffs().iter().enumerate() {
        let s = c.to_string();
        if s == "0" {
            continue;
        }
        let (neg, abs) = match s.strip_prefix('-') {
            Some(a) => (true, a.to_string()),
            None => (false, s),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        if e == 0 || abs != "1" {
            out.push_str(&abs);
        }
        if e >= 1 {
            out.push_str(var);
            if e >= 2 {
                out.push_str(&pow_latex(e));
            }
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

pub fn latex_multi(p: &MultiPoly) -> String {
    let mu = p.mu();
    let mut out = String::new();
    for (exps, c) in p.terms() {
        let s = c.to_string();
        let (neg, abs) = match s.strip_prefix('-') {
            Some(a) => (true, a.to_string()),
            None => (false, s),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let vars: String = exps
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e > 0)
            .map(|(i, &e)| {
                let mut t = latex_var(mu, i);
                if e >= 2 {
                    t.push_str(&pow_latex(e as usize));
                }
                t
            })
            .collect();
        if vars.is_empty() || abs != "1" {
            out.push_str(&abs);
        }
        out.push_str(&vars);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// Splits a compacted polynomial into (negative?, term body) pairs,
/// respecting braces so "q^{-1}" never splits (we reject it later, but
/// cleanly).
fn split_terms(compact: &str) -> Result<Vec<(bool, &str)>, String> {
    let bytes = compact.as_bytes();
    if bytes.is_empty() {
        return Err("empty polynomial".to_string());
    }
    let mut terms = Vec::new();
    let mut depth = 0i32;
    let mut sign = false;
    let mut start = 0;
    let mut i = 0;
    if bytes[0] == b'+' || bytes[0] == b'-' {
        sign = bytes[0] == b'-';
        start = 1;
        i = 1;
    }
    while i < bytes.len() {
        match bytes[i] {
            b'{' => depth += 1,
            b'}' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                terms.push((sign, &compact[start..i]));
                sign = bytes[i] == b'-';
                start = i + 1;
            }
            _ => {}
        }
        i += 1;
    }
    if depth != 0 {
        return Err("unbalanced braces".to_string());
    }
    terms.push((sign, &compact[start..]));
    if terms.iter().any(|(_, t)| t.is_empty()) {
        return Err("empty term".to_string());
    }
    Ok(terms)
}

fn split_leading_digits(s: &str) -> (&str, &str) {
    let end = s.bytes().take_while(|b| b.is_ascii_digit()).count();
    s.split_at(end)
}

/// Parses an exponent suffix "^e" or "^{e}"; empty input means exponent 1.
fn parse_exponent(s: &str) -> Result<(usize, &str), String> {
    let Some(rest) = s.strip_prefix('^') else {
        return Ok((1, s));
    };
    if let Some(inner) = rest.strip_prefix('{') {
        let close = inner
            .find('}')
            .ok_or_else(|| "unclosed exponent brace".to_string())?;
        let e = inner[..close]
            .parse()
            .map_err(|_| format!("bad exponent in {s:?}"))?;
        Ok((e, &inner[close + 1..]))
    } else {
        let (digits, tail) = split_leading_digits(rest);
        if digits.is_empty() {
            return Err(format!("bad exponent in {s:?}"));
        }
        Ok((digits.parse().unwrap(), tail))
    }
}

pub fn parse_uni_latex(s: &str, var: &str) -> Result<UniPoly, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "0" {
        return Ok(UniPoly::zero());
    }
    let mut poly = UniPoly::zero();
    for (neg, body) in split_terms(&compact)? {
        let (digits, rest) = split_leading_digits(body);
        let mut coeff: BigInt = if digits.is_empty() {
            BigInt::from(1)
        } else {
            digits
                .parse()
                .map_err(|_| format!("bad coefficient in {body:?}"))?
        };
        let exp = if rest.is_empty() {
            if digits.is_empty() {
                return Err(format!(
                    "term {body:?} has neither coefficient nor variable"
                ));
            }
            0
        } else {
            let tail = rest
                .strip_prefix(var)
                .ok_or_else(|| format!("expected variable {var:?} in term {body:?}"))?;
            let (e, left) = parse_exponent(tail)?;
            if !left.is_empty() {
                return Err(format!("trailing input {left:?} in term {body:?}"));
            }
            e
        };
        if neg {
            coeff = -coeff;
        }
        let mut coeffs = vec![BigInt::from(0); exp + 1];
        coeffs[exp] = coeff;
        poly = &poly + &UniPoly::from_coeffs(coeffs);
    }
    Ok(poly)
}

pub fn parse_multi_latex(s: &str, mu: usize) -> Result<MultiPoly, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "0" {
        return Ok(MultiPoly::zero(mu));
    }
    // Longest names first so q_{12} is not read as q_1 with junk behind it.
    let mut names: Vec<(String, usize)> = (0..mu).map(|i| (latex_var(mu, i), i)).collect();
    names.sort_by_key(|(name, _)| std::cmp::Reverse(name.len()));
    let mut poly = MultiPoly::zero(mu);
    for (neg, body) in split_terms(&compact)? {
        let (digits, mut rest) = split_leading_digits(body);
        let mut coeff: BigInt = if digits.is_empty() {
            BigInt::from(1)
        } else {
            digits
                .parse()
                .map_err(|_| format!("bad coefficient in {body:?}"))?
        };
        let mut exps = vec![0u32; mu];
        while !rest.is_empty() {
            let Some((name, idx)) = names
                .iter()
                .find(|(name, _)| rest.starts_with(name.as_str()))
            else {
                return Err(format!("unknown variable at {rest:?} in term {body:?}"));
            };
            let (e, tail) = parse_exponent(&rest[name.len()..])?;
            exps[*idx] += e as u32;
            rest = tail;
        }
        if neg {
            coeff = -coeff;
        }
        let term = MultiPoly::constant(mu, coeff).mul(&MultiPoly::monomial(mu, exps));
        poly = poly.add(&term);
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uni(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_i64_coeffs(coeffs)
    }

    #[test]
    fn latex_braces_only_wide_exponents() {
        let p = uni(&[1, 3, 3, 3, 2, 1, 1]);
        assert_eq!(latex_uni(&p, "q"), "1+3q+3q^2+3q^3+2q^4+q^5+q^6");
        let mut coeffs = vec![0i64; 12];
        coeffs[0] = 2;
        coeffs[11] = -1;
        assert_eq!(latex_uni(&uni(&coeffs), "q"), "2-q^{11}");
        assert_eq!(latex_uni(&UniPoly::zero(), "q"), "0");
    }

    #[test]
    fn uni_roundtrip_and_rejection() {
        for coeffs in [
            vec![1i64],
            vec![0, 1],
            vec![1, 2, 1, 1],
            vec![-1, 0, 5],
            vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 7],
        ] {
            let p = uni(&coeffs);
            assert_eq!(parse_uni_latex(&latex_uni(&p, "q"), "q").unwrap(), p);
        }
        assert!(parse_uni_latex("", "q").is_err());
        assert!(parse_uni_latex("q+", "q").is_err());
        assert!(parse_uni_latex("2x", "q").is_err());
        assert!(parse_uni_latex("q^{3", "q").is_err());
        assert!(parse_uni_latex("q^x", "q").is_err());
    }

    #[test]
    fn multi_latex_uses_qp_names_at_two_variables() {
        let p = MultiPoly::monomial(2, vec![1, 0]).add(&MultiPoly::monomial(2, vec![0, 1]));
        assert_eq!(latex_multi(&p), "p+q");
        assert_eq!(parse_multi_latex("p+q", 2).unwrap(), p);
        let q3 = MultiPoly::monomial(3, vec![0, 2, 1]);
        assert_eq!(latex_multi(&q3), "q_2^2q_3");
        assert_eq!(parse_multi_latex("q_2^2q_3", 3).unwrap(), q3);
    }

    #[test]
    fn multi_roundtrip_with_wide_subscripts() {
        let mut exps = vec![0u32; 12];
        exps[0] = 1;
        exps[11] = 10;
        let p = MultiPoly::constant(12, BigInt::from(-4)).mul(&MultiPoly::monomial(12, exps));
        let text = latex_multi(&p);
        assert_eq!(text, "-4q_1q_{12}^{10}");
        assert_eq!(parse_multi_latex(&text, 12).unwrap(), p);
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("1+q"), "1+q");
        assert_eq!(csv_field("10,9,8"), "\"10,9,8\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
