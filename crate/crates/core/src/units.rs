//! Energy unit conversion. Everything internal is eV.

/// CODATA 2018 hartree energy in eV.
pub const EV_PER_HARTREE: f64 = 27.211386245988;

#[inline]
pub fn ev_to_hartree(ev: f64) -> f64 {
    ev / EV_PER_HARTREE
}

#[inline]
pub fn hartree_to_ev(ha: f64) -> f64 {
    ha * EV_PER_HARTREE
}
