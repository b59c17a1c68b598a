//! The specialization `w_j = q^{j−1} ω` with `S`, `T` terminal intervals of `[M]`,
//! and `z` on `U∩V` (resp. `U^c∩V^c`) filled by geometric strings
//! `η_i, η_i q, …, η_i q^{k_i−1}` (resp. `q^{1−l_i}/ξ_i, …, 1/ξ_i`).
//! Under it the 6j-symbol reduces to a `V_m^n` series (one form) or, after
//! reversing the summation, to a second `V_m^n` series.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::{cat, scale, Shift, SixJIndex};
use crate::error::{Error, Result};
use crate::numerics::{ratio, Accumulator, EllipticParams, Real, Total};
use crate::residual::between;
use crate::series::identities::Rkt;
use crate::series::{box_points, v_box, v_term, SeriesSpec, Support};
use crate::subset::Subset;
use crate::weight::cross_tq;

#[derive(Clone, Debug, PartialEq)]
pub struct Specialization<T> {
    pub m: usize,
    /// `|S|`; `S = {M−s+1, …, M}`.
    pub s: usize,
    /// `|T|`; `T = {M−t+1, …, M}`.
    pub t: usize,
    pub u: Subset,
    pub v: Subset,
    /// Lengths of the geometric strings on `U∩V`.
    pub k: Vec<usize>,
    /// Lengths of the geometric strings on `U^c∩V^c`.
    pub l: Vec<usize>,
    pub omega: Complex<T>,
    pub eta: Vec<Complex<T>>,
    pub xi: Vec<Complex<T>>,
    /// Free values of `z` on the symmetric difference `U △ V`, in index order.
    pub free: Vec<Complex<T>>,
    pub lambda: Complex<T>,
}

/// Compositions of `total` into `parts` positive parts, in lexicographic order.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    box_points(&vec![total; parts], |c| {
        if c.iter().sum::<usize>() == total && c.iter().all(|&x| x >= 1) {
            out.push(c.to_vec());
        }
    });
    out
}

fn qpoch<T: Real>(params: &EllipticParams<T>, k: i64) -> Result<Complex<T>> {
    params.pochhammer(params.q(), k)
}

impl<T: Real> Specialization<T> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        m: usize,
        s: usize,
        t: usize,
        u: Subset,
        v: Subset,
        k: Vec<usize>,
        l: Vec<usize>,
        omega: Complex<T>,
        eta: Vec<Complex<T>>,
        xi: Vec<Complex<T>>,
        free: Vec<Complex<T>>,
        lambda: Complex<T>,
    ) -> Result<Self> {
        let n = u.ambient();
        if v.ambient() != n || s > m || t > m {
            return Err(Error::Domain("inconsistent specialization sizes".into()));
        }
        if s + u.len() != t + v.len() {
            return Err(Error::Domain(
                "specialization violates |S|+|U| = |T|+|V|".into(),
            ));
        }
        let uv = u.intersection(&v).len();
        let ucvc = u.complement().intersection(&v.complement()).len();
        if k.iter().sum::<usize>() != uv || l.iter().sum::<usize>() != ucvc {
            return Err(Error::Domain(format!(
                "string lengths must sum to |U∩V| = {uv} and |U^c∩V^c| = {ucvc}"
            )));
        }
        if k.contains(&0) || l.contains(&0) {
            return Err(Error::Domain("string lengths must be positive".into()));
        }
        if eta.len() != k.len() || xi.len() != l.len() || free.len() != n - uv - ucvc {
            return Err(Error::Domain(
                "wrong number of specialization parameters".into(),
            ));
        }
        Ok(Self {
            m,
            s,
            t,
            u,
            v,
            k,
            l,
            omega,
            eta,
            xi,
            free,
            lambda,
        })
    }

    pub fn n(&self) -> usize {
        self.u.ambient()
    }

    fn big_l(&self) -> i64 {
        (self.s + self.u.len()) as i64
    }

    fn big_k(&self) -> i64 {
        self.k.iter().sum::<usize>() as i64
    }

    pub fn w(&self, params: &EllipticParams<T>) -> Vec<Complex<T>> {
        (0..self.m)
            .map(|j| params.q_int(j as i64) * self.omega)
            .collect()
    }

    pub fn z(&self, params: &EllipticParams<T>) -> Vec<Complex<T>> {
        let n = self.n();
        let mut z = vec![None; n];
        let uv = self.u.intersection(&self.v).indices();
        let strings = self
            .k
            .iter()
            .zip(&self.eta)
            .flat_map(|(&ki, &e)| (0..ki).map(move |j| (e, j as i64)));
        for (pos, (e, j)) in uv.iter().zip(strings) {
            z[*pos] = Some(e * params.q_int(j));
        }
        let ucvc = self
            .u
            .complement()
            .intersection(&self.v.complement())
            .indices();
        let strings = self
            .l
            .iter()
            .zip(&self.xi)
            .flat_map(|(&li, &x)| (0..li).map(move |j| (x, 1 - li as i64 + j as i64)));
        for (pos, (x, e)) in ucvc.iter().zip(strings) {
            z[*pos] = Some(params.q_int(e) / x);
        }
        let mut free = self.free.iter();
        z.into_iter()
            .map(|v| v.unwrap_or_else(|| *free.next().expect("free values counted in new")))
            .collect()
    }

    /// The specialized 6j index; it carries `self` so the specialized methods apply.
    pub fn index(&self, params: &EllipticParams<T>) -> Result<SixJIndex<T>> {
        let mut idx = SixJIndex::new(
            Subset::interval(self.m, self.m - self.s, self.m),
            Subset::interval(self.m, self.m - self.t, self.m),
            self.u,
            self.v,
            self.w(params),
            self.z(params),
            self.lambda,
        )?;
        idx.specialization = Some(Box::new(self.clone()));
        Ok(idx)
    }

    /// Factors shared by both reductions that involve `z` on `U △ V`.
    fn outer_factor(&self, params: &EllipticParams<T>, sh: &Shift<'_, T>) -> Result<Complex<T>> {
        let z = self.z(params);
        let (u, v) = (&self.u, &self.v);
        let (uc, vc) = (u.complement(), v.complement());
        let mm = self.m as i64;
        let n = self.n() as i64;
        let l = self.big_l();
        let nu = u.len() as i64;
        let qm_om = params.q_int(mm) * self.omega;
        let mut pre = cross_tq(
            params,
            &uc.intersection(v).restrict(&z),
            &u.intersection(&vc).restrict(&z),
        )?;
        for i in u.intersection(&vc).iter() {
            pre = pre
                * params.theta_ratio(
                    sh.up(1 + mm + n - l - nu)? * self.omega / z[i],
                    qm_om / z[i],
                )?;
            for (&kj, &ej) in self.k.iter().zip(&self.eta) {
                pre = pre * params.theta_ratio(ej * params.q_int(kj as i64) / z[i], ej / z[i])?;
            }
        }
        for i in uc.intersection(v).iter() {
            pre = pre
                * params.theta_ratio(
                    sh.down(self.t as i64 - 1)? * self.omega / z[i],
                    qm_om / z[i],
                )?;
            for (&lj, &xj) in self.l.iter().zip(&self.xi) {
                pre = pre * params.theta_ratio(params.q_int(lj as i64) * xj * z[i], xj * z[i])?;
            }
        }
        Ok(pre)
    }

    /// The reduction to a sum over `0 ≤ y_i ≤ k_i`, `|y| ≤ K+M−L`.
    pub fn ahc(&self, params: &EllipticParams<T>) -> Result<Total<T>> {
        let (pre, inner) = self.ahc_parts(params)?;
        Ok(Total {
            value: pre * inner.value,
            mass: pre.norm() * inner.mass,
        })
    }

    /// Prefactor and inner sum of [`Self::ahc`].
    fn ahc_parts(&self, params: &EllipticParams<T>) -> Result<(Complex<T>, Total<T>)> {
        let sh = Shift {
            p: params,
            lam: self.lambda,
        };
        let q = params.q();
        let (mm, n) = (self.m as i64, self.n() as i64);
        let (s, t) = (self.s as i64, self.t as i64);
        let (l, kk) = (self.big_l(), self.big_k());
        let nu = self.u.len() as i64;
        let nv = self.v.len() as i64;
        if kk + mm - l < 0 {
            // empty support
            return Ok((Complex::one(), Total::exact(Complex::zero())));
        }
        let om = self.omega;
        let (eta, xi) = (&self.eta, &self.xi);

        let mut pre = ratio(
            qpoch(params, mm - s)? * qpoch(params, l - kk)?,
            qpoch(params, t)? * qpoch(params, mm + kk - l)?,
            "specialized prefactor",
        )?;
        pre = pre
            * ratio(
                sh.poch_up(2 + mm + n - 2 * l, s)? * sh.poch_up(2 + n - nu - kk, kk)?,
                sh.poch_up(2 + mm - 2 * t, t)?
                    * sh.poch_up(2 + mm + n - 2 * l, nv)?
                    * sh.poch_down(2 * t - mm, nv - kk)?,
                "specialized prefactor",
            )?;
        pre = pre * self.outer_factor(params, &sh)?;
        let shift = params.q_int(l - mm - kk);
        for (&ki, &ei) in self.k.iter().zip(eta) {
            pre = pre * params.pochhammer_ratio(q * ei / om, q * shift * ei / om, ki as i64)?;
        }
        for (&li, &xi_) in self.l.iter().zip(xi) {
            pre = pre
                * params.pochhammer_ratio(
                    om * xi_ / shift,
                    params.q_int(mm) * om * xi_,
                    li as i64,
                )?;
        }

        let mut acc = Accumulator::new();
        let mut err = None;
        box_points(&self.k, |y| {
            let yy = y.iter().sum::<usize>() as i64;
            if err.is_some() || yy > kk + mm - l {
                return;
            }
            let term = (|| -> Result<Complex<T>> {
                let mut tm = params.delta_ratio(eta, y)? * params.q_int(yy);
                for (i, &ei) in eta.iter().enumerate() {
                    let x = shift * ei / om;
                    tm = tm
                        * params.theta_ratio(x * params.q_int(yy + y[i] as i64), x)?
                        * params.pochhammer_ratio(x, x * params.q_int(1 + self.k[i] as i64), yy)?;
                }
                tm = tm
                    * ratio(
                        params.pochhammer_prod(&[shift, q * shift * params.q_int(mm)], yy)?,
                        params.pochhammer_prod(
                            &[sh.up(2 + n - nu - kk)?, sh.down(t + l - mm - kk)?],
                            yy,
                        )?,
                        "specialized term",
                    )?;
                for (&li, &xi_) in self.l.iter().zip(xi) {
                    let x = q * shift / (xi_ * om);
                    tm = tm * params.pochhammer_ratio(x, x * params.q_int(-(li as i64)), yy)?;
                }
                for (i, &ei) in eta.iter().enumerate() {
                    let yi = y[i] as i64;
                    let e = ei / om;
                    tm = tm
                        * ratio(
                            params.pochhammer_prod(
                                &[sh.down(-1 + l + nu - mm - n)? * e, sh.up(1 - t)? * e],
                                yi,
                            )?,
                            params.pochhammer_prod(&[q * e, params.q_int(-mm) * e], yi)?,
                            "specialized term",
                        )?;
                    for (&kj, &ej) in self.k.iter().zip(eta) {
                        tm = tm
                            * params.pochhammer_ratio(
                                params.q_int(-(kj as i64)) * ei / ej,
                                q * ei / ej,
                                yi,
                            )?;
                    }
                    for (&lj, &xj) in self.l.iter().zip(xi) {
                        tm = tm
                            * params.pochhammer_ratio(
                                params.q_int(lj as i64) * xj * ei,
                                xj * ei,
                                yi,
                            )?;
                    }
                }
                Ok(tm)
            })();
            match term {
                Ok(v) => acc.add(v),
                Err(e) => err = Some(e),
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok((pre, acc.total())),
        }
    }

    /// The reduction obtained by `y_i → k_i − y_i`; for `L > M` the sum runs over
    /// `|y| ≥ L−M` with `1/(q)_{M−L} (q^{1+M−L})_{|y|}` read as `1/(q)_{M−L+|y|}`.
    pub fn iri(&self, params: &EllipticParams<T>) -> Result<Total<T>> {
        let sh = Shift {
            p: params,
            lam: self.lambda,
        };
        let (mm, n) = (self.m as i64, self.n() as i64);
        let (s, t) = (self.s as i64, self.t as i64);
        let (l, kk) = (self.big_l(), self.big_k());
        let nu = self.u.len() as i64;
        let nv = self.v.len() as i64;
        let om = self.omega;
        let (eta, xi) = (&self.eta, &self.xi);

        let mut pre = params.q_int((s + n - mm - nv) * kk)
            * ratio(
                qpoch(params, mm - s)? * qpoch(params, l)?,
                qpoch(params, t)?,
                "specialized prefactor",
            )?;
        pre = pre
            * ratio(
                sh.poch_up(2 + mm + n - 2 * l, s)?,
                sh.poch_up(2 + mm - 2 * t, t)?
                    * sh.poch_up(2 + mm + n - 2 * l, nv)?
                    * sh.poch_down(2 * t - mm, nv)?,
                "specialized prefactor",
            )?;
        pre = pre * self.outer_factor(params, &sh)?;
        for (&ki, &ei) in self.k.iter().zip(eta) {
            for (&lj, &xj) in self.l.iter().zip(xi) {
                let x = ei * xj;
                pre = pre
                    * ratio(
                        params.pochhammer(x, (ki + lj) as i64)?,
                        params.pochhammer(x, ki as i64)? * params.pochhammer(x, lj as i64)?,
                        "specialized prefactor",
                    )?;
            }
            let e = ei / om;
            pre = pre
                * ratio(
                    params.pochhammer_prod(
                        &[sh.down(-1 + l + nu - mm - n)? * e, sh.up(1 - t)? * e],
                        ki as i64,
                    )?,
                    params.pochhammer_prod(
                        &[params.q_int(l - mm) * e, params.q_int(-mm) * e],
                        ki as i64,
                    )?,
                    "specialized prefactor",
                )?;
        }
        for (&li, &xi_) in self.l.iter().zip(xi) {
            let x = om * xi_;
            pre = pre
                * params.pochhammer_ratio(
                    params.q_int(mm - l) * x,
                    params.q_int(mm) * x,
                    li as i64,
                )?;
        }

        let (a, b, c, zz) = self.iri_series_params(params)?;
        let mut acc = Accumulator::new();
        let mut err = None;
        box_points(&self.k, |y| {
            let yy = y.iter().sum::<usize>() as i64;
            if err.is_some() || yy < l - mm {
                return;
            }
            let term = v_term(params, a, &b, &c, &zz, y, Some(0))
                .and_then(|v| ratio(v, qpoch(params, mm - l + yy)?, "specialized term"));
            match term {
                Ok(v) => acc.add(v),
                Err(e) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        Ok(acc.scaled(pre))
    }

    #[allow(clippy::type_complexity)]
    fn iri_series_params(
        &self,
        params: &EllipticParams<T>,
    ) -> Result<(
        Complex<T>,
        Vec<Complex<T>>,
        Vec<Complex<T>>,
        Vec<Complex<T>>,
    )> {
        let sh = Shift {
            p: params,
            lam: self.lambda,
        };
        let q = params.q();
        let (mm, n) = (self.m as i64, self.n() as i64);
        let l = self.big_l();
        let nu = self.u.len() as i64;
        let om = self.omega;
        let a = params.q_int(mm - l) * om;
        let mut b = vec![sh.up(1 + mm - l - self.t as i64)?, sh.down(-1 - n + nu)?];
        b.extend(
            self.l
                .iter()
                .zip(&self.xi)
                .map(|(&li, &x)| params.q_int(mm - l + li as i64) * x * om),
        );
        let mut c = vec![om, params.q_int(mm + 1) * om];
        c.extend(self.xi.iter().map(|&x| q / x));
        c.extend_from_slice(&self.eta);
        let zz = self
            .k
            .iter()
            .zip(&self.eta)
            .map(|(&ki, &e)| params.q_int(-(ki as i64)) / e)
            .collect();
        Ok((a, b, c, zz))
    }

    /// The `V_m^n` series (variables `η`, `m = len(k)`, `n = len(l)`) whose sum over
    /// `|y| ≤ K+M−L` is the [`Self::ahc`] sum without its prefactor.
    pub fn series(&self, params: &EllipticParams<T>) -> Result<SeriesSpec<T>> {
        let sh = Shift {
            p: params,
            lam: self.lambda,
        };
        let q = params.q();
        let (mm, n) = (self.m as i64, self.n() as i64);
        let (l, kk) = (self.big_l(), self.big_k());
        let nu = self.u.len() as i64;
        let om = self.omega;
        let shift = params.q_int(l - mm - kk);
        let a = shift / om;
        let mut b = vec![shift, q * shift * params.q_int(mm)];
        b.extend(self.xi.iter().map(|&x| q * shift / (om * x)));
        let mut c = vec![
            sh.up(1 - self.t as i64)? / om,
            sh.down(-1 + l + nu - mm - n)? / om,
        ];
        c.extend(
            self.k
                .iter()
                .zip(&self.eta)
                .map(|(&ki, &e)| params.q_int(-(ki as i64)) / e),
        );
        c.extend(
            self.l
                .iter()
                .zip(&self.xi)
                .map(|(&li, &x)| params.q_int(li as i64) * x),
        );
        SeriesSpec::new(a, b, c, self.eta.clone(), Support::boxed(self.k.clone()))
    }

    /// The [`Self::series`] summed over `|y| ≤ K+M−L`.
    pub fn series_sum(&self, params: &EllipticParams<T>) -> Result<Total<T>> {
        let sp = self.series(params)?;
        let cap = self.big_k() + self.m as i64 - self.big_l();
        let mut acc = Accumulator::new();
        for y in sp.support.points() {
            if y.iter().sum::<usize>() as i64 <= cap {
                acc.add(v_term(params, sp.a, &sp.b, &sp.c, &sp.z, &y, None)?);
            }
        }
        Ok(acc.total())
    }

    /// The rank-exchange transformation applied to [`Self::series`]: `b, c` are its first two
    /// `b`, `d, e` its first two `c`, with `z = η`, `N = k`, `w = ξ`, `M = l`.
    pub fn rkt(&self, params: &EllipticParams<T>) -> Result<Rkt<T>> {
        let sp = self.series(params)?;
        Ok(Rkt {
            a: sp.a,
            b: sp.b[0],
            c: sp.b[1],
            d: sp.c[0],
            e: sp.c[1],
            w: self.xi.clone(),
            z: self.eta.clone(),
            nn: self.k.clone(),
            mm: self.l.clone(),
        })
    }

    /// The `V_n^m` partner in variables `ξ`:
    /// `V(q^{L−K}ω; q^{L−M−K}, q^{1+L−K}, q^{1+L−K}ω/η_i; q^{−λ−1+t}ω, q^{λ+1+M+N−L−|U|}ω,
    /// q^{−l_i}/ξ_i, q^{k_i}η_i; ξ)` summed over `y_i ≤ l_i`.
    pub fn partner(&self, params: &EllipticParams<T>) -> Result<Total<T>> {
        if self.l.is_empty() {
            return Ok(Total::exact(Complex::one()));
        }
        let sh = Shift {
            p: params,
            lam: self.lambda,
        };
        let (mm, n) = (self.m as i64, self.n() as i64);
        let (l, kk) = (self.big_l(), self.big_k());
        let nu = self.u.len() as i64;
        let om = self.omega;
        let a = params.q_int(l - kk) * om;
        let b = cat(
            &[params.q_int(l - mm - kk), params.q_int(1 + l - kk)],
            &scale(
                &self.eta.iter().map(|e| e.inv()).collect::<Vec<_>>(),
                params.q_int(1 + l - kk) * om,
            ),
        );
        let mut c = vec![
            sh.down(-1 + self.t as i64)? * om,
            sh.up(1 + mm + n - l - nu)? * om,
        ];
        c.extend(
            self.l
                .iter()
                .zip(&self.xi)
                .map(|(&li, &x)| params.q_int(-(li as i64)) / x),
        );
        c.extend(
            self.k
                .iter()
                .zip(&self.eta)
                .map(|(&ki, &e)| params.q_int(ki as i64) * e),
        );
        v_box(params, a, &b, &c, &self.xi, &self.l)
    }

    /// Residual of the full-box series against its rank-exchanged form.
    pub fn rkt_residual(&self, params: &EllipticParams<T>) -> Result<T> {
        self.rkt(params)?.residual(params)
    }

    /// Residual of the rank-exchanged right-hand series against [`Self::partner`].
    pub fn partner_residual(&self, params: &EllipticParams<T>) -> Result<T> {
        Ok(between(
            self.rkt(params)?.right_series(params)?,
            self.partner(params)?,
        ))
    }

    /// Relative defect of the balancing condition of [`Self::series`].
    pub fn balance_defect(&self, params: &EllipticParams<T>) -> Result<T> {
        Ok(self.series(params)?.balance_defect(params))
    }

    /// [`Self::ahc`] against [`Self::iri`].
    pub fn consistency_residual(&self, params: &EllipticParams<T>) -> Result<T> {
        let a = self.ahc(params)?;
        let b = self.iri(params)?;
        Ok(if a.mass.is_zero() && b.mass.is_zero() {
            T::zero()
        } else {
            between(a, b)
        })
    }

    /// [`Self::series_sum`] against the explicit sum inside [`Self::ahc`].
    pub fn series_residual(&self, params: &EllipticParams<T>) -> Result<T> {
        let (_, inner) = self.ahc_parts(params)?;
        Ok(between(self.series_sum(params)?, inner))
    }
}
