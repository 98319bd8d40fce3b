//! Static task equilibrium for given capital, labor and automated share.
//!
//! Automated tasks can use capital or labor as perfect substitutes, the rest
//! only labor. When capital per automated task exceeds labor per unautomated
//! task (Region 1) the two factors stay segregated; otherwise labor spills
//! into automated tasks and output becomes linear, `Y = A(K+L)` (Region 2).

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EconomyParams {
    pub a: f64,
    pub sigma: f64,
    pub l: f64,
}

impl EconomyParams {
    pub fn new(a: f64, sigma: f64, l: f64) -> Result<Self> {
        let p = Self { a, sigma, l };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0) || !self.a.is_finite() {
            return Err(Error::domain(format!("A must be > 0, got {}", self.a)));
        }
        if !(self.sigma > 0.0 && self.sigma < 1.0) {
            return Err(Error::domain(format!("sigma must lie in (0,1), got {}", self.sigma)));
        }
        if !(self.l > 0.0) || !self.l.is_finite() {
            return Err(Error::domain(format!("L must be > 0, got {}", self.l)));
        }
        Ok(())
    }

    /// `(σ-1)/σ`, negative for complements.
    pub fn e(&self) -> f64 {
        (self.sigma - 1.0) / self.sigma
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Region1,
    Region2,
}

impl Region {
    pub fn code(self) -> u8 {
        match self {
            Region::Region1 => 1,
            Region::Region2 => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticEquilibrium {
    pub region: Region,
    pub y: f64,
    pub w: f64,
    pub r: f64,
    pub labor_share: f64,
    /// Capital per automated task.
    pub k: f64,
    /// Labor per unautomated task.
    pub ell: f64,
}

pub fn region_threshold_phi(k: f64, l: f64) -> Result<f64> {
    if !(l > 0.0) {
        return Err(Error::domain("labor must be > 0"));
    }
    if !(k >= 0.0) {
        return Err(Error::domain("capital must be >= 0"));
    }
    let x = k / l;
    Ok(x / (1.0 + x))
}

pub fn kappa(phi: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&phi) {
        return Err(Error::domain(format!("kappa needs phi in [0,1), got {phi}")));
    }
    Ok(phi / (1.0 - phi))
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// Region-1 CES composite `X = [K^e Φ^(1/σ) + L^e u^(1/σ)]^(σ/(σ-1))` and the
/// partial derivatives `∂X/∂K`, `∂X/∂L`. Assumes `K > 0`, `u > 0`.
pub(crate) fn ces_composite(sigma: f64, k: f64, l: f64, phi: f64, u: f64) -> (f64, f64, f64) {
    let e = (sigma - 1.0) / sigma;
    let inv = 1.0 / sigma;
    let a1 = e * k.ln() + inv * phi.ln();
    let a2 = e * l.ln() + inv * u.ln();
    let ln_x = log_add_exp(a1, a2) / e;
    // ∂X/∂K = X^(1/σ) K^(-1/σ) Φ^(1/σ)
    let xk = (inv * (ln_x - k.ln() + phi.ln())).exp();
    let xl = (inv * (ln_x - l.ln() + u.ln())).exp();
    (ln_x.exp(), xk, xl)
}

/// Equilibrium with the unautomated share `u = 1 - Φ` given separately, so
/// that region logic stays exact when `Φ` rounds to 1.
pub fn equilibrium_with_share(params: &EconomyParams, k: f64, phi: f64, u: f64) -> Result<StaticEquilibrium> {
    if !(k >= 0.0) || !k.is_finite() {
        return Err(Error::domain(format!("capital must be finite and >= 0, got {k}")));
    }
    if !(0.0..=1.0).contains(&phi) || !(0.0..=1.0).contains(&u) {
        return Err(Error::domain(format!("automated share out of range: phi={phi}, u={u}")));
    }
    let EconomyParams { a, sigma, l } = *params;
    // Region 1 iff K/L > Φ/(1-Φ); ties go to Region 2.
    if u > 0.0 && k * u > phi * l {
        let (x, xk, xl) = ces_composite(sigma, k, l, phi, u);
        let y = a * x;
        let w = a * xl;
        let r = a * xk;
        return Ok(StaticEquilibrium {
            region: Region::Region1,
            y,
            w,
            r,
            labor_share: w * l / y,
            k: k / phi,
            ell: l / u,
        });
    }
    Ok(StaticEquilibrium {
        region: Region::Region2,
        y: a * (k + l),
        w: a,
        r: a,
        labor_share: l / (k + l),
        k: k + l,
        ell: k + l,
    })
}

pub fn static_equilibrium(params: &EconomyParams, k: f64, phi: f64) -> Result<StaticEquilibrium> {
    equilibrium_with_share(params, k, phi, 1.0 - phi)
}

/// Unit cost `c(w,R) = [Φ R^(1-σ) + (1-Φ) w^(1-σ)]^(1/(1-σ)) / A`.
pub fn unit_cost(params: &EconomyParams, phi: f64, w: f64, r: f64) -> f64 {
    let s = 1.0 - params.sigma;
    (phi * r.powf(s) + (1.0 - phi) * w.powf(s)).powf(1.0 / s) / params.a
}

/// Wage on the factor price frontier at rental rate `R`.
pub fn fpf_wage(params: &EconomyParams, phi: f64, r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&phi) {
        return Err(Error::domain(format!("phi must lie in [0,1], got {phi}")));
    }
    if !(r >= 0.0) {
        return Err(Error::domain(format!("R must be >= 0, got {r}")));
    }
    if r > params.a {
        return Err(Error::domain(format!("no frontier point with R = {r} > A = {}", params.a)));
    }
    if phi == 1.0 {
        // degenerate frontier: the single point w = R = A
        return Ok(params.a);
    }
    let s = 1.0 - params.sigma;
    let inner = (params.a.powf(s) - r.powf(s) * phi) / (1.0 - phi);
    Ok(inner.powf(1.0 / s))
}

pub fn limit_wage(params: &EconomyParams, phi: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&phi) {
        return Err(Error::domain(format!("limit wage needs phi in [0,1), got {phi}")));
    }
    Ok(params.a * (1.0 - phi).powf(1.0 / (params.sigma - 1.0)))
}

/// `d log w / dΦ` at fixed capital: productivity term minus displacement term.
pub fn wage_response(params: &EconomyParams, k: f64, phi: f64) -> Result<f64> {
    let eq = static_equilibrium(params, k, phi)?;
    if eq.region != Region::Region1 {
        return Err(Error::domain("wage response is defined in Region 1 only"));
    }
    let s = params.sigma;
    let e = params.e();
    let kk = if phi == 0.0 { 0.0 } else { eq.k.powf(e) };
    let productivity = (kk - eq.ell.powf(e)) * (eq.y / params.a).powf((1.0 - s) / s) / (s * (s - 1.0));
    Ok(productivity - 1.0 / (s * (1.0 - phi)))
}

/// Brute-force allocation oracle: tasks lumped into `n_tasks` buckets with
/// unequal masses; capital and labor are re-allocated by alternating
/// water-filling until the per-bucket inputs settle. Prices are read off as
/// the marginal product of the cheapest bucket each factor can enter.
pub fn oracle_equilibrium(params: &EconomyParams, k: f64, phi: f64, n_tasks: usize) -> Result<StaticEquilibrium> {
    if n_tasks < 2 {
        return Err(Error::domain("oracle needs at least two task buckets"));
    }
    if !(k >= 0.0) || !(0.0..=1.0).contains(&phi) {
        return Err(Error::domain("oracle inputs out of range"));
    }
    let EconomyParams { a, sigma, l } = *params;
    let e = params.e();

    let n_aut = if phi == 0.0 {
        0
    } else if phi == 1.0 {
        n_tasks
    } else {
        ((phi * n_tasks as f64).round() as usize).clamp(1, n_tasks - 1)
    };
    let weights = |n: usize, total: f64| -> Vec<f64> {
        let raw: Vec<f64> = (0..n).map(|j| 1.0 + (j % 3) as f64).collect();
        let s: f64 = raw.iter().sum();
        raw.into_iter().map(|r| r * total / s).collect()
    };
    let mut mass = weights(n_aut, phi);
    mass.extend(weights(n_tasks - n_aut, 1.0 - phi));
    let automated = |j: usize| j < n_aut;

    // water level c with Σ m_j (c - base_j)^+ = total over eligible buckets
    let fill = |base: &[f64], eligible: &dyn Fn(usize) -> bool, total: f64| -> f64 {
        let spent = |c: f64| -> f64 {
            (0..n_tasks)
                .filter(|&j| eligible(j))
                .map(|j| mass[j] * (c - base[j]).max(0.0))
                .sum()
        };
        let mut lo = 0.0;
        let mut hi = 1.0;
        while spent(hi) < total {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if spent(mid) < total {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };

    let mut kj = vec![0.0; n_tasks];
    let mut lj = vec![0.0; n_tasks];
    let mut converged = false;
    for _ in 0..10_000 {
        let prev: Vec<f64> = (0..n_tasks).map(|j| kj[j] + lj[j]).collect();
        if n_aut > 0 {
            let c = fill(&lj, &automated, k);
            for j in 0..n_aut {
                kj[j] = (c - lj[j]).max(0.0);
            }
        }
        let d = fill(&kj, &|_| true, l);
        for j in 0..n_tasks {
            lj[j] = (d - kj[j]).max(0.0);
        }
        let change = (0..n_tasks)
            .map(|j| (kj[j] + lj[j] - prev[j]).abs())
            .fold(0.0, f64::max);
        if change < 1e-10 * (k + l) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::solver("allocation oracle did not converge"));
    }

    let y_task: Vec<f64> = (0..n_tasks).map(|j| kj[j] + lj[j]).collect();
    let s: f64 = (0..n_tasks).map(|j| mass[j] * y_task[j].powf(e)).sum();
    let y = a * s.powf(1.0 / e);
    let scale = a * s.powf(1.0 / e - 1.0);
    let min_all = y_task.iter().cloned().fold(f64::INFINITY, f64::min);
    let min_aut = y_task[..n_aut].iter().cloned().fold(f64::INFINITY, f64::min);
    let w = scale * min_all.powf(-1.0 / sigma);
    let r = if n_aut == 0 { 0.0 } else { scale * min_aut.powf(-1.0 / sigma) };
    let min_unaut = y_task[n_aut..].iter().cloned().fold(f64::INFINITY, f64::min);
    let region = if n_aut < n_tasks && min_aut > min_unaut * (1.0 + 1e-9) {
        Region::Region1
    } else {
        Region::Region2
    };
    Ok(StaticEquilibrium {
        region,
        y,
        w,
        r,
        labor_share: w * l / y,
        k: min_aut,
        ell: if n_aut < n_tasks { min_unaut } else { min_aut },
    })
}

/// Factor price frontier sampled from `R = A` down to `A/1000`, log-spaced.
pub fn fpf_curve(params: &EconomyParams, phi: f64, points: usize) -> Result<Vec<(f64, f64)>> {
    if points < 2 {
        return Err(Error::domain("need at least two frontier points"));
    }
    (0..points)
        .map(|j| {
            let r = params.a * 1e-3f64.powf(j as f64 / (points - 1) as f64);
            Ok((r, fpf_wage(params, phi, r)?))
        })
        .collect()
}

/// Output and factor incomes along an evenly spaced Φ grid on `[0, 1]`:
/// rows of `(phi, Y, wL, RK)`.
pub fn phi_sweep(params: &EconomyParams, k: f64, points: usize) -> Result<Vec<[f64; 4]>> {
    if points < 2 {
        return Err(Error::domain("need at least two sweep points"));
    }
    (0..points)
        .map(|j| {
            let phi = j as f64 / (points - 1) as f64;
            let eq = static_equilibrium(params, k, phi)?;
            Ok([phi, eq.y, eq.w * params.l, eq.r * k])
        })
        .collect()
}
