//! C interface to topokit.
//!
//! Objects cross the boundary as opaque pointers created by the constructor
//! and parse functions and released with the matching `tk_*_free`. Every fallible
//! function returns a `TkStatus`; on failure the message is kept per thread
//! and can be read with `tk_last_error_message`. Strings are copied into
//! caller buffers: the required size including the terminating NUL is always
//! written to `needed`, and `TK_BUFFER_TOO_SMALL` is returned if `len` is
//! smaller.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::{c_char, size_t};
use topokit::cli::{run, FsSource};
use topokit::complex::{Simplex, SimplicialComplex};
use topokit::homology::{hconn, homology, wcm_check};
use topokit::io::{self, Document};
use topokit::thompson::{Address, TreePair};
use topokit::Error;

/// Status codes returned by every fallible call.
#[repr(C)]
#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TkStatus {
    TK_OK = 0,
    TK_NULL_POINTER = 1,
    TK_INVALID_UTF8 = 2,
    TK_PARSE_ERROR = 3,
    TK_INVALID_ARGUMENT = 4,
    TK_PARAMETER_MISMATCH = 5,
    TK_BUDGET_EXCEEDED = 6,
    TK_BUFFER_TOO_SMALL = 7,
    TK_OPERATION_FAILED = 8,
    TK_PANIC = 9,
}

use TkStatus::*;

/// A simplicial complex.
pub struct TkComplex(SimplicialComplex);

/// An element of a Higman-Thompson group, as a reduced tree pair.
pub struct TkTreePair(TreePair);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(s).expect("no interior NUL")));
}

fn fail(status: TkStatus, msg: impl Into<String>) -> TkStatus {
    set_error(msg);
    status
}

fn from_error(e: &Error) -> TkStatus {
    let status = match e {
        Error::Parse { .. } => TK_PARSE_ERROR,
        Error::ParameterMismatch(_) => TK_PARAMETER_MISMATCH,
        Error::BudgetExceeded(_) => TK_BUDGET_EXCEEDED,
        Error::InvalidArgument(_)
        | Error::InvalidTreePair(_)
        | Error::AddressTooShallow(_)
        | Error::SimplexNotInComplex(_)
        | Error::EmptyComplex => TK_INVALID_ARGUMENT,
        _ => TK_OPERATION_FAILED,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning panics into `TK_PANIC`. Clears the last error first.
fn guard(f: impl FnOnce() -> TkStatus) -> TkStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(TK_PANIC, format!("internal panic: {msg}"))
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, TkStatus> {
    if p.is_null() {
        return Err(fail(TK_NULL_POINTER, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(TK_INVALID_UTF8, format!("{what} is not UTF-8")))
}

unsafe fn obj<'a, T>(p: *const T, what: &str) -> Result<&'a T, TkStatus> {
    p.as_ref().ok_or_else(|| fail(TK_NULL_POINTER, format!("{what} is null")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, TkStatus> {
    p.as_mut().ok_or_else(|| fail(TK_NULL_POINTER, format!("{what} is null")))
}

/// Copies `s` plus a NUL into `buf`.
unsafe fn write_str(s: &str, buf: *mut c_char, len: size_t, needed: *mut size_t) -> TkStatus {
    let bytes = s.as_bytes();
    if !needed.is_null() {
        *needed = bytes.len() + 1;
    }
    if buf.is_null() || len < bytes.len() + 1 {
        return fail(TK_BUFFER_TOO_SMALL, format!("buffer needs {} bytes", bytes.len() + 1));
    }
    ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, bytes.len());
    *buf.add(bytes.len()) = 0;
    TK_OK
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Length of the last error message on this thread, including the NUL; 0
/// if there is none.
#[no_mangle]
pub extern "C" fn tk_last_error_length() -> size_t {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(0, |s| s.as_bytes_with_nul().len()))
}

/// Copies the last error message of this thread into `buf`.
///
/// # Safety
/// `buf` must be valid for `len` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn tk_last_error_message(buf: *mut c_char, len: size_t, needed: *mut size_t) -> TkStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().as_ref().map(|s| s.to_string_lossy().into_owned()));
    let msg = msg.unwrap_or_default();
    let bytes = msg.as_bytes();
    if !needed.is_null() {
        *needed = bytes.len() + 1;
    }
    if buf.is_null() || len < bytes.len() + 1 {
        return TK_BUFFER_TOO_SMALL;
    }
    ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, bytes.len());
    *buf.add(bytes.len()) = 0;
    TK_OK
}

/// Builds a complex from facets given as a flat vertex array: facet `i` is
/// the next `sizes[i]` entries of `vertices`.
///
/// # Safety
/// `vertices` must hold the sum of `sizes`, `sizes` must hold `nfacets`
/// entries, `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tk_complex_from_facets(
    vertices: *const u32,
    sizes: *const size_t,
    nfacets: size_t,
    out_complex: *mut *mut TkComplex,
) -> TkStatus {
    guard(|| {
        let slot = tri!(out(out_complex, "out_complex"));
        if nfacets > 0 && (vertices.is_null() || sizes.is_null()) {
            return fail(TK_NULL_POINTER, "vertices or sizes is null");
        }
        let sizes = if nfacets == 0 { &[][..] } else { std::slice::from_raw_parts(sizes, nfacets) };
        let total: usize = sizes.iter().sum();
        let verts = if total == 0 { &[][..] } else { std::slice::from_raw_parts(vertices, total) };
        let mut facets = Vec::with_capacity(nfacets);
        let mut at = 0;
        for &n in sizes {
            match Simplex::try_new(verts[at..at + n].iter().copied()) {
                Some(s) => facets.push(s),
                None => return fail(TK_INVALID_ARGUMENT, format!("facet {} is empty", facets.len())),
            }
            at += n;
        }
        *slot = Box::into_raw(Box::new(TkComplex(SimplicialComplex::new(facets))));
        TK_OK
    })
}

/// Parses a complex document (`"kind": "complex"`).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out_complex` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tk_complex_from_json(json: *const c_char, out_complex: *mut *mut TkComplex) -> TkStatus {
    guard(|| {
        let slot = tri!(out(out_complex, "out_complex"));
        let text = tri!(str_arg(json, "json"));
        match io::parse_complex(text) {
            Ok(x) => {
                *slot = Box::into_raw(Box::new(TkComplex(x)));
                TK_OK
            }
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `c` must come from this library and not be used afterwards; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn tk_complex_free(c: *mut TkComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Serializes a complex as a JSON document.
///
/// # Safety
/// `c` must be a live handle; `buf` valid for `len` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn tk_complex_to_json(
    c: *const TkComplex,
    buf: *mut c_char,
    len: size_t,
    needed: *mut size_t,
) -> TkStatus {
    guard(|| {
        let c = tri!(obj(c, "complex"));
        write_str(&io::to_text(&Document::Complex(c.0.clone())), buf, len, needed)
    })
}

/// Dimension; -1 for the empty complex.
///
/// # Safety
/// `c` must be a live handle and `out_dim` writable.
#[no_mangle]
pub unsafe extern "C" fn tk_complex_dim(c: *const TkComplex, out_dim: *mut i32) -> TkStatus {
    guard(|| {
        let c = tri!(obj(c, "complex"));
        *tri!(out(out_dim, "out_dim")) = c.0.dim();
        TK_OK
    })
}

/// Number of simplices in dimension `k`.
///
/// # Safety
/// `c` must be a live handle and `out_count` writable.
#[no_mangle]
pub unsafe extern "C" fn tk_complex_count(c: *const TkComplex, k: i32, out_count: *mut size_t) -> TkStatus {
    guard(|| {
        let c = tri!(obj(c, "complex"));
        *tri!(out(out_count, "out_count")) = c.0.simplices_of_dim(k).len();
        TK_OK
    })
}

/// # Safety
/// `c` must be a live handle and `out_chi` writable.
#[no_mangle]
pub unsafe extern "C" fn tk_complex_euler_characteristic(c: *const TkComplex, out_chi: *mut i64) -> TkStatus {
    guard(|| {
        let c = tri!(obj(c, "complex"));
        *tri!(out(out_chi, "out_chi")) = c.0.euler_characteristic();
        TK_OK
    })
}

/// Reduced Betti number and number of torsion coefficients in degree `k`.
///
/// # Safety
/// `c` must be a live handle; both out pointers writable (`out_torsion` may be null).
#[no_mangle]
pub unsafe extern "C" fn tk_complex_homology(
    c: *const TkComplex,
    k: size_t,
    out_betti: *mut size_t,
    out_torsion: *mut size_t,
) -> TkStatus {
    guard(|| {
        let c = tri!(obj(c, "complex"));
        let b = tri!(out(out_betti, "out_betti"));
        let h = homology(&c.0);
        *b = h.betti(k);
        if !out_torsion.is_null() {
            *out_torsion = h.torsion(k).len();
        }
        TK_OK
    })
}

/// Homological connectivity: -2 empty, -1 disconnected, `INT32_MAX` acyclic.
///
/// # Safety
/// `c` must be a live handle and `out_hconn` writable.
#[no_mangle]
pub unsafe extern "C" fn tk_complex_hconn(c: *const TkComplex, out_hconn: *mut i32) -> TkStatus {
    guard(|| {
        let c = tri!(obj(c, "complex"));
        *tri!(out(out_hconn, "out_hconn")) = hconn(&c.0);
        TK_OK
    })
}

/// Weakly Cohen-Macaulay test of dimension `n`.
///
/// # Safety
/// `c` must be a live handle and `out_holds` writable.
#[no_mangle]
pub unsafe extern "C" fn tk_complex_wcm(c: *const TkComplex, n: i32, out_holds: *mut bool) -> TkStatus {
    guard(|| {
        let c = tri!(obj(c, "complex"));
        *tri!(out(out_holds, "out_holds")) = wcm_check(&c.0, n).holds;
        TK_OK
    })
}

/// Parses a tree pair from parenthesis forests and a leaf permutation, and
/// reduces it.
///
/// # Safety
/// `domain` and `range` must be NUL-terminated; `perm` must hold `nperm`
/// entries; `out_pair` writable.
#[no_mangle]
pub unsafe extern "C" fn tk_tree_pair_parse(
    d: u32,
    domain: *const c_char,
    range: *const c_char,
    perm: *const size_t,
    nperm: size_t,
    out_pair: *mut *mut TkTreePair,
) -> TkStatus {
    guard(|| {
        let slot = tri!(out(out_pair, "out_pair"));
        let dom = tri!(str_arg(domain, "domain"));
        let ran = tri!(str_arg(range, "range"));
        if nperm > 0 && perm.is_null() {
            return fail(TK_NULL_POINTER, "perm is null");
        }
        let p = if nperm == 0 { vec![] } else { std::slice::from_raw_parts(perm, nperm).to_vec() };
        match TreePair::parse(d, dom, ran, p) {
            Ok(g) => {
                *slot = Box::into_raw(Box::new(TkTreePair(g)));
                TK_OK
            }
            Err(e) => from_error(&e),
        }
    })
}

/// The identity of `V_{d,r}`.
///
/// # Safety
/// `out_pair` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tk_tree_pair_identity(d: u32, r: u32, out_pair: *mut *mut TkTreePair) -> TkStatus {
    guard(|| {
        let slot = tri!(out(out_pair, "out_pair"));
        if d == 0 || r == 0 {
            return fail(TK_INVALID_ARGUMENT, "d and r must be positive");
        }
        *slot = Box::into_raw(Box::new(TkTreePair(TreePair::identity(d, r))));
        TK_OK
    })
}

/// # Safety
/// `g` must come from this library and not be used afterwards; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn tk_tree_pair_free(g: *mut TkTreePair) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// `a ∘ b`, applying `b` first.
///
/// # Safety
/// `a`, `b` must be live handles; `out_pair` writable.
#[no_mangle]
pub unsafe extern "C" fn tk_tree_pair_compose(
    a: *const TkTreePair,
    b: *const TkTreePair,
    out_pair: *mut *mut TkTreePair,
) -> TkStatus {
    guard(|| {
        let (a, b) = (tri!(obj(a, "a")), tri!(obj(b, "b")));
        let slot = tri!(out(out_pair, "out_pair"));
        match a.0.compose(&b.0) {
            Ok(g) => {
                *slot = Box::into_raw(Box::new(TkTreePair(g)));
                TK_OK
            }
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `g` must be a live handle; `out_pair` writable.
#[no_mangle]
pub unsafe extern "C" fn tk_tree_pair_inverse(g: *const TkTreePair, out_pair: *mut *mut TkTreePair) -> TkStatus {
    guard(|| {
        let g = tri!(obj(g, "g"));
        *tri!(out(out_pair, "out_pair")) = Box::into_raw(Box::new(TkTreePair(g.0.inverse())));
        TK_OK
    })
}

/// Normal-form equality.
///
/// # Safety
/// `a`, `b` must be live handles; `out_equal` writable.
#[no_mangle]
pub unsafe extern "C" fn tk_tree_pair_equal(a: *const TkTreePair, b: *const TkTreePair, out_equal: *mut bool) -> TkStatus {
    guard(|| {
        let (a, b) = (tri!(obj(a, "a")), tri!(obj(b, "b")));
        *tri!(out(out_equal, "out_equal")) = a.0 == b.0;
        TK_OK
    })
}

/// Image of an address written `root:word`, e.g. `0:0110`.
///
/// # Safety
/// `g` must be a live handle; `address` NUL-terminated; `buf` valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn tk_tree_pair_act(
    g: *const TkTreePair,
    address: *const c_char,
    buf: *mut c_char,
    len: size_t,
    needed: *mut size_t,
) -> TkStatus {
    guard(|| {
        let g = tri!(obj(g, "g"));
        let a = tri!(str_arg(address, "address"));
        let img = Address::parse(a).and_then(|a| g.0.act(&a));
        match img {
            Ok(b) => write_str(&b.to_string(), buf, len, needed),
            Err(e) => from_error(&e),
        }
    })
}

/// Text form `domain -> range [perm]`.
///
/// # Safety
/// `g` must be a live handle; `buf` valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn tk_tree_pair_to_string(
    g: *const TkTreePair,
    buf: *mut c_char,
    len: size_t,
    needed: *mut size_t,
) -> TkStatus {
    guard(|| {
        let g = tri!(obj(g, "g"));
        write_str(&g.0.to_string(), buf, len, needed)
    })
}

/// Runs the command-line front end on `args` (without the program name),
/// reading inputs from the file system. The report goes into `buf` and the
/// exit code into `out_exit`.
///
/// # Safety
/// `args` must hold `nargs` NUL-terminated strings; `buf` valid for `len`
/// bytes; `out_exit` writable.
#[no_mangle]
pub unsafe extern "C" fn tk_cli_run(
    args: *const *const c_char,
    nargs: size_t,
    buf: *mut c_char,
    len: size_t,
    needed: *mut size_t,
    out_exit: *mut i32,
) -> TkStatus {
    guard(|| {
        let exit = tri!(out(out_exit, "out_exit"));
        if nargs > 0 && args.is_null() {
            return fail(TK_NULL_POINTER, "args is null");
        }
        let mut v = Vec::with_capacity(nargs);
        for i in 0..nargs {
            v.push(tri!(str_arg(*args.add(i), "argument")).to_string());
        }
        let o = run(&v, &FsSource);
        *exit = o.exit;
        write_str(&o.text, buf, len, needed)
    })
}
