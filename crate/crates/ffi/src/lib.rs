//! C ABI for `netcorr`.
//!
//! Objects are opaque handles created by `nc_*` constructors and released
//! with the matching `nc_*_free`. Fallible calls return an [`NcStatus`] and
//! write their result through an out-pointer; on failure the out-pointer is
//! left untouched and [`nc_last_error_message`] describes the error.
//! Matrices cross the boundary as row-major `double` arrays.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use nalgebra::DMatrix;
use netcorr::correlation::{network_pearson, pearson};
use netcorr::metrics::{effective_resistance, embedding_distances};
use netcorr::scan::random_graph;
use netcorr::spectral::{certify_negative_type, certify_weight};
use netcorr::weights::{exp_weight, identity_weight};
use netcorr::{DistanceMatrix, Embedding, Error, Graph, Signal, SpectralVerdict, WeightMatrix};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    SelfLoop = 4,
    TooFewNodes = 5,
    Disconnected = 6,
    NotSymmetric = 7,
    InvalidArgument = 8,
    ZeroVariance = 9,
    NegativeVariance = 10,
    Uncertified = 11,
    Internal = 12,
    Panic = 13,
}

impl From<&Error> for NcStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::UnknownNode(_)
            | Error::DuplicateNode(_)
            | Error::Csv(_) => NcStatus::Parse,
            Error::SelfLoop { .. } => NcStatus::SelfLoop,
            Error::TooFewNodes(_) => NcStatus::TooFewNodes,
            Error::Disconnected { .. } => NcStatus::Disconnected,
            Error::NotSymmetric { .. } => NcStatus::NotSymmetric,
            Error::ZeroVariance => NcStatus::ZeroVariance,
            Error::NegativeVariance(_) => NcStatus::NegativeVariance,
            Error::Uncertified { .. } => NcStatus::Uncertified,
            Error::Internal(_) => NcStatus::Internal,
            _ => NcStatus::InvalidArgument,
        }
    }
}

/// Undirected simple graph.
pub struct NcGraph(Graph);
/// Symmetric distance matrix with zero diagonal.
pub struct NcDistance(DistanceMatrix);
/// Symmetric weight matrix.
pub struct NcWeight(WeightMatrix);
/// Spectral certificate of a weight or distance matrix.
pub struct NcVerdict(SpectralVerdict);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: NcStatus, msg: impl Into<String>) -> NcStatus {
    set_error(msg.into());
    status
}

/// Runs `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), NcStatus>) -> NcStatus {
    set_error(String::new());
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NcStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let what = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(NcStatus::Panic, format!("panic: {what}"))
        }
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, NcStatus>;
}

impl<T> OrStatus<T> for netcorr::Result<T> {
    fn or_status(self) -> Result<T, NcStatus> {
        self.map_err(|e| fail(NcStatus::from(&e), e.to_string()))
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, NcStatus> {
    p.as_ref()
        .ok_or_else(|| fail(NcStatus::NullPointer, format!("{what} is null")))
}

unsafe fn doubles<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], NcStatus> {
    if p.is_null() {
        return Err(fail(NcStatus::NullPointer, format!("{what} is null")));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), NcStatus> {
    if out.is_null() {
        return Err(fail(NcStatus::NullPointer, "output pointer is null"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_box<T>(out: *mut *mut T, value: T) -> Result<(), NcStatus> {
    put(out, Box::into_raw(Box::new(value)))
}

unsafe fn copy_out(src: &[f64], buf: *mut f64, len: usize) -> Result<(), NcStatus> {
    if buf.is_null() {
        return Err(fail(NcStatus::NullPointer, "buffer is null"));
    }
    if len < src.len() {
        return Err(fail(
            NcStatus::InvalidArgument,
            format!("buffer holds {len} values, need {}", src.len()),
        ));
    }
    ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    Ok(())
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn nc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or "" after a success.
/// Valid until the next `nc_*` call on the same thread.
#[no_mangle]
pub extern "C" fn nc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parse an edge list: one `u v` pair per line, a single label declares an
/// isolated node, blank lines and lines starting with `#` are skipped.
#[no_mangle]
pub unsafe extern "C" fn nc_graph_parse(text: *const c_char, out: *mut *mut NcGraph) -> NcStatus {
    guard(|| {
        if text.is_null() {
            return Err(fail(NcStatus::NullPointer, "text is null"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| fail(NcStatus::InvalidUtf8, e.to_string()))?;
        put_box(out, NcGraph(Graph::parse_edge_list(text).or_status()?))
    })
}

/// G(n, p) with a deterministic seed. May be disconnected.
#[no_mangle]
pub unsafe extern "C" fn nc_graph_random(
    n: usize,
    p: f64,
    seed: u64,
    out: *mut *mut NcGraph,
) -> NcStatus {
    guard(|| put_box(out, NcGraph(random_graph(n, p, seed).or_status()?)))
}

#[no_mangle]
pub unsafe extern "C" fn nc_graph_complete_bipartite(
    a: usize,
    b: usize,
    out: *mut *mut NcGraph,
) -> NcStatus {
    guard(|| put_box(out, NcGraph(Graph::complete_bipartite(a, b).or_status()?)))
}

/// 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn nc_graph_node_count(g: *const NcGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.node_count())
}

#[no_mangle]
pub unsafe extern "C" fn nc_graph_edge_count(g: *const NcGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

#[no_mangle]
pub unsafe extern "C" fn nc_graph_is_connected(g: *const NcGraph) -> bool {
    g.as_ref().is_some_and(|g| g.0.is_connected())
}

#[no_mangle]
pub unsafe extern "C" fn nc_graph_free(g: *mut NcGraph) {
    free(g)
}

/// Hop-count distances. Fails with `DISCONNECTED` on a disconnected graph.
#[no_mangle]
pub unsafe extern "C" fn nc_distance_shortest_paths(
    g: *const NcGraph,
    out: *mut *mut NcDistance,
) -> NcStatus {
    guard(|| {
        let g = deref(g, "graph")?;
        put_box(out, NcDistance(g.0.shortest_paths().or_status()?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn nc_distance_effective_resistance(
    g: *const NcGraph,
    out: *mut *mut NcDistance,
) -> NcStatus {
    guard(|| {
        let g = deref(g, "graph")?;
        put_box(out, NcDistance(effective_resistance(&g.0).or_status()?))
    })
}

/// Euclidean distances between the rows of an `n x d` row-major array.
#[no_mangle]
pub unsafe extern "C" fn nc_distance_from_embedding(
    coords: *const f64,
    n: usize,
    d: usize,
    out: *mut *mut NcDistance,
) -> NcStatus {
    guard(|| {
        let len = n
            .checked_mul(d)
            .ok_or_else(|| fail(NcStatus::InvalidArgument, "n * d overflows"))?;
        let c = doubles(coords, len, "coords")?;
        let e = Embedding::from_rows(DMatrix::from_row_slice(n, d, c)).or_status()?;
        put_box(out, NcDistance(embedding_distances(&e)))
    })
}

#[no_mangle]
pub unsafe extern "C" fn nc_distance_size(d: *const NcDistance) -> usize {
    d.as_ref().map_or(0, |d| d.0.len())
}

#[no_mangle]
pub unsafe extern "C" fn nc_distance_get(
    d: *const NcDistance,
    i: usize,
    j: usize,
    out: *mut f64,
) -> NcStatus {
    guard(|| {
        let d = deref(d, "distance")?;
        let n = d.0.len();
        if i >= n || j >= n {
            return Err(fail(
                NcStatus::InvalidArgument,
                format!("index ({i}, {j}) out of range for n = {n}"),
            ));
        }
        put(out, d.0.get(i, j))
    })
}

#[no_mangle]
pub unsafe extern "C" fn nc_distance_free(d: *mut NcDistance) {
    free(d)
}

/// `W = exp(-k D)` entrywise; `k` must be finite and positive.
#[no_mangle]
pub unsafe extern "C" fn nc_weight_exp(
    d: *const NcDistance,
    k: f64,
    out: *mut *mut NcWeight,
) -> NcStatus {
    guard(|| {
        let d = deref(d, "distance")?;
        put_box(out, NcWeight(exp_weight(&d.0, k).or_status()?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn nc_weight_identity(n: usize, out: *mut *mut NcWeight) -> NcStatus {
    guard(|| put_box(out, NcWeight(identity_weight(n).or_status()?)))
}

/// Weight matrix from `n * n` row-major values. Must be symmetric.
#[no_mangle]
pub unsafe extern "C" fn nc_weight_from_values(
    values: *const f64,
    n: usize,
    out: *mut *mut NcWeight,
) -> NcStatus {
    guard(|| {
        let len = n
            .checked_mul(n)
            .ok_or_else(|| fail(NcStatus::InvalidArgument, "n * n overflows"))?;
        let v = doubles(values, len, "values")?;
        let labels = (0..n).map(|i| i.to_string()).collect();
        let w = WeightMatrix::external(DMatrix::from_row_slice(n, n, v), labels).or_status()?;
        put_box(out, NcWeight(w))
    })
}

#[no_mangle]
pub unsafe extern "C" fn nc_weight_size(w: *const NcWeight) -> usize {
    w.as_ref().map_or(0, |w| w.0.len())
}

#[no_mangle]
pub unsafe extern "C" fn nc_weight_free(w: *mut NcWeight) {
    free(w)
}

/// Certify `W` positive definite on the complement of the constant vector.
/// An invalid verdict is still `OK`; inspect it with `nc_verdict_is_valid`.
#[no_mangle]
pub unsafe extern "C" fn nc_certify_weight(
    w: *const NcWeight,
    rel_tol: f64,
    out: *mut *mut NcVerdict,
) -> NcStatus {
    guard(|| {
        let w = deref(w, "weight")?;
        put_box(out, NcVerdict(certify_weight(&w.0, rel_tol).or_status()?))
    })
}

/// Certify that `D` is of negative type.
#[no_mangle]
pub unsafe extern "C" fn nc_certify_negative_type(
    d: *const NcDistance,
    rel_tol: f64,
    out: *mut *mut NcVerdict,
) -> NcStatus {
    guard(|| {
        let d = deref(d, "distance")?;
        put_box(
            out,
            NcVerdict(certify_negative_type(&d.0, rel_tol).or_status()?),
        )
    })
}

#[no_mangle]
pub unsafe extern "C" fn nc_verdict_is_valid(v: *const NcVerdict) -> bool {
    v.as_ref().is_some_and(|v| v.0.is_valid())
}

/// Smallest eigenvalue other than the forced zero; NaN for a null handle.
#[no_mangle]
pub unsafe extern "C" fn nc_verdict_min_nonforced(v: *const NcVerdict) -> f64 {
    v.as_ref().map_or(f64::NAN, |v| v.0.min_nonforced)
}

#[no_mangle]
pub unsafe extern "C" fn nc_verdict_eigenvalue_count(v: *const NcVerdict) -> usize {
    v.as_ref().map_or(0, |v| v.0.len())
}

/// Copy the eigenvalues, ascending, into `buf` (capacity `len`).
#[no_mangle]
pub unsafe extern "C" fn nc_verdict_eigenvalues(
    v: *const NcVerdict,
    buf: *mut f64,
    len: usize,
) -> NcStatus {
    guard(|| copy_out(&deref(v, "verdict")?.0.eigenvalues, buf, len))
}

/// Copy the unit eigenvector of the smallest non-forced eigenvalue.
#[no_mangle]
pub unsafe extern "C" fn nc_verdict_min_eigenvector(
    v: *const NcVerdict,
    buf: *mut f64,
    len: usize,
) -> NcStatus {
    guard(|| copy_out(&deref(v, "verdict")?.0.min_eigenvector, buf, len))
}

#[no_mangle]
pub unsafe extern "C" fn nc_verdict_free(v: *mut NcVerdict) {
    free(v)
}

unsafe fn signal(p: *const f64, n: usize, what: &str) -> Result<Signal, NcStatus> {
    Signal::new(doubles(p, n, what)?.to_vec()).or_status()
}

/// Classical Pearson correlation of two length-`n` signals.
#[no_mangle]
pub unsafe extern "C" fn nc_pearson(
    x: *const f64,
    y: *const f64,
    n: usize,
    out: *mut f64,
) -> NcStatus {
    guard(|| {
        let (x, y) = (signal(x, n, "x")?, signal(y, n, "y")?);
        put(out, pearson(&x, &y).or_status()?)
    })
}

/// Network Pearson correlation under `w`. `v` must be the certificate of
/// `w`; an invalid certificate yields `UNCERTIFIED`.
#[no_mangle]
pub unsafe extern "C" fn nc_network_pearson(
    w: *const NcWeight,
    v: *const NcVerdict,
    x: *const f64,
    y: *const f64,
    n: usize,
    out: *mut f64,
) -> NcStatus {
    guard(|| {
        let (w, v) = (deref(w, "weight")?, deref(v, "verdict")?);
        let (x, y) = (signal(x, n, "x")?, signal(y, n, "y")?);
        put(out, network_pearson(&x, &y, &w.0, &v.0).or_status()?.rho)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(NcStatus::from(&Error::ZeroVariance), NcStatus::ZeroVariance);
        assert_eq!(
            NcStatus::from(&Error::UnknownNode("a".into())),
            NcStatus::Parse
        );
        assert_eq!(
            NcStatus::from(&Error::InvalidScale(0.0)),
            NcStatus::InvalidArgument
        );
        assert_eq!(
            NcStatus::from(&Error::Disconnected { components: 2 }),
            NcStatus::Disconnected
        );
    }

    #[test]
    fn panics_become_status() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, NcStatus::Panic);
        let msg = unsafe { CStr::from_ptr(nc_last_error_message()) };
        assert_eq!(msg.to_str().unwrap(), "panic: boom");
    }
}
