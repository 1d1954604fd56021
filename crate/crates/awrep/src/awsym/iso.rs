//! The algebra isomorphisms rho, sigma, tau as substitutions on [`NcPoly`].
//!
//! Each map substitutes generators and relabels the parameter symbols so the
//! image is expressed in the *target* algebra's own symbols; composing with
//! [`RewriteSystem::askey_wilson`]'s reduce then checks identities in the
//! target. With that convention each defining relation maps exactly onto a
//! defining relation:
//!
//! * `rho`: `I_k -> I_{k+1}`, `A_k -> A_{k+1}` (indices mod 3),
//! * `sigma`: `I1 <-> I2`, `I3 -> I3 + (I2 I1 - I1 I2)(q^{1/2}+q^{-1/2})`,
//!   `A1 <-> A2`,
//! * `tau(e, e')`: `I1 -> e I1`, `I2 -> e' I2`, `I3 -> e e' I3` and the same
//!   signs on `A1`, `A2`, `A3`.

use super::coeff::Coeff;
use super::poly::NcPoly;
use super::rewrite::RewriteSystem;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Iso {
    Rho,
    Sigma,
    /// `tau_{e,e'}` with `e, e' in {-1, +1}`.
    Tau(i8, i8),
}

impl Iso {
    /// Generator images (entry i holds the image of `I_{i+1}`).
    pub fn generator_images(&self) -> [NcPoly; 3] {
        match self {
            Iso::Rho => [NcPoly::gen(2), NcPoly::gen(3), NcPoly::gen(1)],
            Iso::Sigma => {
                let vsum = &Coeff::v_pow(1, 1) + &Coeff::v_pow(1, -1);
                let comm = NcPoly::gen(2)
                    .mul(&NcPoly::gen(1))
                    .sub(&NcPoly::gen(1).mul(&NcPoly::gen(2)));
                [
                    NcPoly::gen(2),
                    NcPoly::gen(1),
                    NcPoly::gen(3).add(&comm.scale(&vsum)),
                ]
            }
            Iso::Tau(e, ep) => [
                NcPoly::gen(1).scale(&Coeff::int(*e as i64)),
                NcPoly::gen(2).scale(&Coeff::int(*ep as i64)),
                NcPoly::gen(3).scale(&Coeff::int((*e * *ep) as i64)),
            ],
        }
    }

    fn map_coeff(&self, c: &Coeff) -> Coeff {
        match self {
            Iso::Rho => c.permute_params([2, 3, 1]),
            Iso::Sigma => c.permute_params([2, 1, 3]),
            Iso::Tau(e, ep) => {
                c.scale_params([*e as i64, *ep as i64, (*e * *ep) as i64])
            }
        }
    }
}

/// Apply an isomorphism: substitute generators, relabel parameters, and
/// return the image reduced to normal form in the target algebra.
pub fn apply_iso(iso: Iso, p: &NcPoly) -> Result<NcPoly> {
    if let Iso::Tau(e, ep) = iso {
        assert!(
            (e == 1 || e == -1) && (ep == 1 || ep == -1),
            "tau signs must be +-1"
        );
    }
    let images = iso.generator_images();
    let image = p.substitute(&images, |c| iso.map_coeff(c));
    RewriteSystem::askey_wilson().reduce(&image)
}
