//! Versioned JSON scenario documents.
//!
//! Units are carried in key names. Power-like keys ending in `_dbm` are dBm,
//! `_db` keys are plain decibels. Anything omitted falls back to the
//! [`LinkDefaults`] values.

use std::fmt;

use pinchant_core::{
    dbm_to_linear, ChannelParams, OutageSpec, Scenario, SolverTolerances, UserPosition,
    SPEED_OF_LIGHT,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// A problem with a scenario document, tied to the field that caused it.
#[derive(Debug, Clone, PartialEq)]
pub struct FileError {
    pub field: String,
    pub message: String,
}

impl FileError {
    fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

impl std::error::Error for FileError {}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub region: Region,
    #[serde(default)]
    pub defaults: LinkDefaults,
    pub users: Vec<UserEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outage: Option<OutageEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceEntry>,
}

/// Service region in metres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Region {
    pub dx: f64,
    #[serde(default = "default_ten")]
    pub dy: f64,
    #[serde(default = "default_ten")]
    pub dv: f64,
}

fn default_ten() -> f64 {
    10.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkDefaults {
    #[serde(default = "default_fc")]
    pub fc_hz: f64,
    #[serde(default = "default_p")]
    pub p_dbm: f64,
    #[serde(default = "default_noise")]
    pub noise_dbm: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_sq_dbm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_sq_db: Option<f64>,
    #[serde(default = "default_beta")]
    pub beta: f64,
    /// Free-space to guided wavelength ratio; only affects the LoS phase.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effective_index: Option<f64>,
}

fn default_fc() -> f64 {
    28e9
}
fn default_p() -> f64 {
    40.0
}
fn default_noise() -> f64 {
    -90.0
}
fn default_beta() -> f64 {
    5e-3
}

/// NLoS power used when neither `mu_sq_dbm` nor `mu_sq_db` is given.
pub const DEFAULT_MU_SQ_DBM: f64 = -60.0;

impl Default for LinkDefaults {
    fn default() -> Self {
        Self {
            fc_hz: default_fc(),
            p_dbm: default_p(),
            noise_dbm: default_noise(),
            mu_sq_dbm: None,
            mu_sq_db: None,
            beta: default_beta(),
            effective_index: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UserEntry {
    pub x: f64,
    pub y: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise_dbm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_sq_dbm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_sq_db: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
}

impl UserEntry {
    pub fn at(x: f64, y: f64) -> Self {
        Self {
            x,
            y,
            noise_dbm: None,
            mu_sq_dbm: None,
            mu_sq_db: None,
            beta: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutageEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilons: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_y: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_u: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
}

impl ToleranceEntry {
    pub fn apply(&self, tol: &mut SolverTolerances) {
        if let Some(v) = self.eps_t {
            tol.eps_t = v;
        }
        if let Some(v) = self.eps_y {
            tol.eps_y = v;
        }
        if let Some(v) = self.eps_u {
            tol.eps_u = v;
        }
        if let Some(v) = self.max_iter {
            tol.max_iter = v;
        }
    }
}

/// Everything a solver needs, validated.
#[derive(Debug, Clone, PartialEq)]
pub struct Loaded {
    pub scenario: Scenario,
    pub outage: Option<OutageSpec>,
    pub tolerances: SolverTolerances,
}

/// dBm to watts.
fn dbm_to_watts(v: f64) -> f64 {
    1e-3 * dbm_to_linear(v)
}

fn check(field: &str, value: f64, ok: bool, what: &str) -> Result<(), FileError> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(FileError::new(field, format!("{what}, got {value}")))
    }
}

fn mu_sq_linear(field: &str, dbm: Option<f64>, db: Option<f64>) -> Result<Option<f64>, FileError> {
    match (dbm, db) {
        (Some(_), Some(_)) => Err(FileError::new(
            field,
            "give either mu_sq_dbm or mu_sq_db, not both",
        )),
        (Some(v), None) => {
            check(&format!("{field}.mu_sq_dbm"), v, true, "must be finite")?;
            Ok(Some(dbm_to_watts(v)))
        }
        (None, Some(v)) => {
            check(&format!("{field}.mu_sq_db"), v, true, "must be finite")?;
            Ok(Some(10f64.powf(v / 10.0)))
        }
        (None, None) => Ok(None),
    }
}

impl ScenarioFile {
    pub fn from_json(text: &str) -> Result<Self, FileError> {
        serde_json::from_str(text).map_err(|e| {
            FileError::new(
                format!("line {} column {}", e.line(), e.column()),
                e.to_string(),
            )
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scenario serializes");
        s.push('\n');
        s
    }

    pub fn label(&self) -> &str {
        self.name.as_deref().unwrap_or("scenario")
    }

    /// Channel statistics for user `m`, after per-user overrides.
    pub fn channel(&self, m: usize) -> Result<ChannelParams, FileError> {
        let d = &self.defaults;
        let u = &self.users[m];
        let field = format!("users[{m}]");
        let mu_sq = match mu_sq_linear(&field, u.mu_sq_dbm, u.mu_sq_db)? {
            Some(v) => v,
            None => mu_sq_linear("defaults", d.mu_sq_dbm, d.mu_sq_db)?
                .unwrap_or(dbm_to_watts(DEFAULT_MU_SQ_DBM)),
        };
        let noise = u.noise_dbm.unwrap_or(d.noise_dbm);
        check(&format!("{field}.noise_dbm"), noise, true, "must be finite")?;
        let beta = u.beta.unwrap_or(d.beta);
        check(
            &format!("{field}.beta"),
            beta,
            beta >= 0.0,
            "must be non-negative",
        )?;
        let mut params = ChannelParams::from_link_budget(d.fc_hz, d.p_dbm, noise, mu_sq, beta)
            .map_err(|e| FileError::new(field.clone(), e.to_string()))?;
        if let Some(n) = d.effective_index {
            params.guided_wavelength = SPEED_OF_LIGHT / d.fc_hz / n;
        }
        Ok(params)
    }

    fn validate_fields(&self) -> Result<(), FileError> {
        if self.schema != SCHEMA_VERSION {
            return Err(FileError::new(
                "schema",
                format!("unsupported version {}, expected {SCHEMA_VERSION}", self.schema),
            ));
        }
        let r = &self.region;
        check("region.dx", r.dx, r.dx > 0.0, "must be positive")?;
        check("region.dy", r.dy, r.dy > 0.0, "must be positive")?;
        check("region.dv", r.dv, r.dv > 0.0, "must be positive")?;
        let d = &self.defaults;
        check("defaults.fc_hz", d.fc_hz, d.fc_hz > 0.0, "must be positive")?;
        check("defaults.p_dbm", d.p_dbm, true, "must be finite")?;
        check("defaults.noise_dbm", d.noise_dbm, true, "must be finite")?;
        check("defaults.beta", d.beta, d.beta >= 0.0, "must be non-negative")?;
        if let Some(n) = d.effective_index {
            check("defaults.effective_index", n, n > 0.0, "must be positive")?;
        }
        mu_sq_linear("defaults", d.mu_sq_dbm, d.mu_sq_db)?;
        if self.users.is_empty() {
            return Err(FileError::new("users", "at least one user is required"));
        }
        for (m, u) in self.users.iter().enumerate() {
            check(
                &format!("users[{m}].x"),
                u.x,
                (0.0..=r.dx).contains(&u.x),
                &format!("must lie in [0, {}]", r.dx),
            )?;
            check(
                &format!("users[{m}].y"),
                u.y,
                u.y.abs() <= r.dy / 2.0,
                &format!("must lie in [-{0}, {0}]", r.dy / 2.0),
            )?;
        }
        if let Some(t) = &self.tolerances {
            for (name, v) in [("eps_t", t.eps_t), ("eps_y", t.eps_y), ("eps_u", t.eps_u)] {
                if let Some(v) = v {
                    check(&format!("tolerances.{name}"), v, v > 0.0 && v < 1.0, "must lie in (0, 1)")?;
                }
            }
            if t.max_iter == Some(0) {
                return Err(FileError::new("tolerances.max_iter", "must be at least 1"));
            }
        }
        Ok(())
    }

    fn outage_spec(&self) -> Result<Option<OutageSpec>, FileError> {
        let Some(o) = &self.outage else {
            return Ok(None);
        };
        let eps = match (&o.epsilon, &o.epsilons) {
            (Some(e), None) => vec![*e; self.users.len()],
            (None, Some(list)) => {
                if list.len() != self.users.len() {
                    return Err(FileError::new(
                        "outage.epsilons",
                        format!("has {} entries for {} users", list.len(), self.users.len()),
                    ));
                }
                list.clone()
            }
            _ => {
                return Err(FileError::new(
                    "outage",
                    "give exactly one of epsilon or epsilons",
                ))
            }
        };
        for (m, &e) in eps.iter().enumerate() {
            let field = if o.epsilon.is_some() {
                "outage.epsilon".to_string()
            } else {
                format!("outage.epsilons[{m}]")
            };
            check(&field, e, e > 0.0 && e < 1.0, "must lie in (0, 1)")?;
        }
        OutageSpec::new(eps)
            .map(Some)
            .map_err(|e| FileError::new("outage", e.to_string()))
    }

    pub fn load(&self) -> Result<Loaded, FileError> {
        self.validate_fields()?;
        let channels = (0..self.users.len())
            .map(|m| self.channel(m))
            .collect::<Result<Vec<_>, _>>()?;
        let users = self.users.iter().map(|u| UserPosition::new(u.x, u.y)).collect();
        let r = &self.region;
        let scenario = Scenario::new(r.dx, r.dy, r.dv, users, channels)
            .map_err(|e| FileError::new("scenario", e.to_string()))?;
        let mut tolerances = SolverTolerances::default();
        if let Some(t) = &self.tolerances {
            t.apply(&mut tolerances);
        }
        Ok(Loaded {
            scenario,
            outage: self.outage_spec()?,
            tolerances,
        })
    }

    /// Single-user-independent template with the given region and no users.
    pub fn template(dx: f64) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            name: None,
            region: Region {
                dx,
                dy: default_ten(),
                dv: default_ten(),
            },
            defaults: LinkDefaults::default(),
            users: Vec::new(),
            outage: None,
            tolerances: None,
        }
    }

    /// Replaces the users with `count` positions drawn uniformly over the
    /// region. The draws are made in unit coordinates, so for a given `seed`
    /// and `drop` the same relative layout is reused across region sizes and
    /// the first users stay put when `count` grows.
    pub fn with_random_users(&self, count: usize, seed: u64, drop: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(drop);
        let r = self.region;
        let users = (0..count)
            .map(|_| {
                let u: f64 = rng.random();
                let v: f64 = rng.random();
                UserEntry::at(u * r.dx, (v - 0.5) * r.dy)
            })
            .collect();
        Self {
            users,
            outage: self.outage.as_ref().map(|o| OutageEntry {
                epsilon: o.epsilon,
                epsilons: o.epsilons.as_ref().map(|e| e.iter().copied().cycle().take(count).collect()),
            }),
            ..self.clone()
        }
    }
}
