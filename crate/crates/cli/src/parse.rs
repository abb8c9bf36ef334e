//! Value parsers for the command-line flags.

use subspec::mathieu::ParityClass;
use subspec::multiplier::Multiplier;
use subspec::se2::Se2Grid;

/// A list of numbers given as one flag value.
#[derive(Debug, Clone, PartialEq)]
pub struct Values(pub Vec<f64>);

pub fn class(s: &str) -> Result<ParityClass, String> {
    s.parse().map_err(|e: subspec::Error| e.to_string())
}

pub fn multiplier(s: &str) -> Result<Multiplier, String> {
    s.parse().map_err(|e: subspec::Error| e.to_string())
}

fn number(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn count(s: &str) -> Result<usize, String> {
    s.trim().parse().map_err(|_| format!("`{s}` is not a nonnegative integer"))
}

/// `a:b:n`, `n ≥ 1` equally spaced points from `a` to `b`.
pub fn range(s: &str) -> Result<Values, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(format!("expected a:b:n, got `{s}`"));
    };
    let (a, b, n) = (number(a)?, number(b)?, count(n)?);
    match n {
        0 => Err("a range needs at least one point".into()),
        1 => Ok(Values(vec![a])),
        _ => Ok(Values((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect())),
    }
}

/// Comma-separated numbers.
pub fn list(s: &str) -> Result<Values, String> {
    s.split(',').map(number).collect::<Result<_, _>>().map(Values)
}

/// `N:h:Ntheta`.
pub fn se2_grid(s: &str) -> Result<Se2Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [n, h, nt] = parts.as_slice() else {
        return Err(format!("expected N:h:Ntheta, got `{s}`"));
    };
    let grid = Se2Grid {
        n: count(n)?,
        h: number(h)?,
        n_theta: count(nt)?,
    };
    grid.validate().map_err(|e| e.to_string())?;
    Ok(grid)
}

/// `len:h:ylen` for the abelian grids.
pub fn abelian_grid(s: &str) -> Result<(usize, f64, usize), String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [len, h, y] = parts.as_slice() else {
        return Err(format!("expected len:h:ylen, got `{s}`"));
    };
    let (len, h, y) = (count(len)?, number(h)?, count(y)?);
    if len == 0 || h <= 0.0 {
        return Err("grid needs len >= 1 and h > 0".into());
    }
    Ok((len, h, y))
}

/// Matrix rows separated by `;`, entries by `,`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix(pub Vec<Vec<f64>>);

pub fn matrix(s: &str) -> Result<Matrix, String> {
    if s.trim().is_empty() {
        return Ok(Matrix(Vec::new()));
    }
    s.split(';').map(|r| list(r).map(|v| v.0)).collect::<Result<_, _>>().map(Matrix)
}
