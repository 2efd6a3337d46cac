use crate::Failure;

/// `v` with 15 significant digits.
pub fn sig15(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    if (-5..15).contains(&mag) {
        format!("{:.*}", (14 - mag).max(0) as usize, v)
    } else {
        format!("{v:.14e}")
    }
}

/// Writes to stdout; a closed pipe is not an error.
pub fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

/// Comma separated floats, e.g. "1,0,-2.5".
pub fn parse_point(s: &str, dim: usize) -> Result<Vec<f64>, Failure> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::usage(format!("bad coordinate list '{s}': {e}")))?;
    if v.len() != dim {
        return Err(Failure::usage(format!("'{s}' has {} coordinates, expected {dim}", v.len())));
    }
    Ok(v)
}

pub fn parse_vec3(s: &str) -> Result<[f64; 3], Failure> {
    let v = parse_point(s, 3)?;
    Ok([v[0], v[1], v[2]])
}

pub fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))
}

pub fn write_file(path: &str, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure { code: crate::EXIT_FAIL, message: format!("cannot write {path}: {e}") })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig15(2.0), "2.00000000000000");
        assert_eq!(sig15(-1.938027880706232), "-1.93802788070623");
        assert_eq!(sig15(20.0), "20.0000000000000");
        assert_eq!(sig15(1.5e-9), "1.50000000000000e-9");
    }

    #[test]
    fn points() {
        assert_eq!(parse_vec3("1, 0,-2.5").ok(), Some([1.0, 0.0, -2.5]));
        assert!(parse_vec3("1,0").is_err());
        assert!(parse_vec3("1,a,0").is_err());
    }
}
