//! Generalized tempered geometric stable laws.
//!
//! ```
//! use gtgs::charexp::CharExponent;
//! use gtgs::cumulants::cumulant;
//! use gtgs::GtgsParams;
//!
//! let p = GtgsParams::symmetric(1.4, 0.6, 1.0, 1.0, 1.0, 0.0);
//! let psi = CharExponent::new(&p)?.eval(2.0)?;
//! assert!(psi.re < 0.0);
//! assert!(cumulant(&p, 2)? > 0.0);
//! # Ok::<(), gtgs::GtgsError>(())
//! ```

pub mod charexp;
pub mod cumulants;
pub mod error;
pub mod limits;
pub mod model;
pub mod montecarlo;
pub mod oracle;
pub mod quad;
pub mod spectral;
pub mod specfun;

pub use error::{GtgsError, Result};
pub use model::{GtgsParams, Side, SideParams};
