//! C interface to `sfvs-core`.
//!
//! Instances and solutions are opaque heap handles. Every fallible call
//! returns an [`SfvsStatus`]; on failure the message is available from
//! [`sfvs_last_error_message`] on the same thread. Vertices are 1-based.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use sfvs_core::cli::{solve_instance, Algorithm};
use sfvs_core::format::parse_instance;
use sfvs_core::{Error, Graph, ProblemInstance, ProblemKind, Solution, Vertex, VertexSet};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SfvsStatus {
    Ok = 0,
    /// Malformed instance text.
    ParseError = 1,
    /// Bad vertex id, self-loop, duplicate edge or zero weight.
    InvalidInput = 2,
    /// The instance is outside what the chosen solver accepts
    /// (independence bound, weights, size limit, kind).
    Precondition = 3,
    /// Unknown algorithm or kind name, or a string that is not UTF-8.
    InvalidArgument = 4,
    NullPointer = 5,
    Internal = 6,
}

/// Graph plus special set under construction, or a parsed instance.
pub struct SfvsInstance {
    n: usize,
    kind: ProblemKind,
    edges: Vec<(Vertex, Vertex)>,
    weights: Vec<u64>,
    special: Vec<Vertex>,
    budget: Option<u64>,
}

pub struct SfvsSolution {
    inner: Solution,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul bytes replaced"));
}

fn status_of(err: &Error) -> SfvsStatus {
    match err {
        Error::Parse { .. } => SfvsStatus::ParseError,
        Error::InvalidVertex { .. } | Error::SelfLoop(_) | Error::DuplicateEdge(..) | Error::ZeroWeight(_) => {
            SfvsStatus::InvalidInput
        }
        Error::IndependenceBound { .. } | Error::NonUnitWeights | Error::TooLarge { .. } | Error::Precondition(_) => {
            SfvsStatus::Precondition
        }
        Error::UnboundedFlow | Error::Internal(_) => SfvsStatus::Internal,
    }
}

struct Fail(SfvsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(SfvsStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording any failure or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SfvsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SfvsStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside sfvs");
            SfvsStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(SfvsStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn inst_mut<'a>(p: *mut SfvsInstance) -> Result<&'a mut SfvsInstance, Fail> {
    p.as_mut().ok_or_else(|| null("instance"))
}

impl SfvsInstance {
    fn check_vertex(&self, v: usize) -> Result<(), Fail> {
        if v == 0 || v > self.n {
            return Err(Error::InvalidVertex { vertex: v, n: self.n }.into());
        }
        Ok(())
    }

    fn build(&self) -> Result<ProblemInstance, Error> {
        let g = Graph::with_weights(self.n, self.edges.iter().copied(), &self.weights)?;
        let special = match self.kind {
            ProblemKind::Fvs => g.vertex_set(),
            _ => self.special.iter().copied().collect::<VertexSet>(),
        };
        ProblemInstance::new(g, special, self.kind, self.budget)
    }

    fn from_problem(p: &ProblemInstance) -> Self {
        let g = &p.graph;
        SfvsInstance {
            n: g.n(),
            kind: p.kind,
            edges: g.edges().collect(),
            weights: g.vertices().map(|v| g.weight(v)).collect(),
            special: p.special.iter().collect(),
            budget: p.budget,
        }
    }
}

/// Creates an instance with `n` isolated unit-weight vertices. `kind` is one
/// of `wsfvs sfvs fvs nmc nmcdt wnmcdt vc mis`.
///
/// # Safety
/// `kind` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sfvs_instance_new(n: usize, kind: *const c_char, out: *mut *mut SfvsInstance) -> SfvsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let kind: ProblemKind = str_arg(kind, "kind")?
            .parse()
            .map_err(|e: String| Fail(SfvsStatus::InvalidArgument, e))?;
        let inst = SfvsInstance {
            n,
            kind,
            edges: Vec::new(),
            weights: vec![1; n],
            special: Vec::new(),
            budget: None,
        };
        *out = Box::into_raw(Box::new(inst));
        Ok(())
    })
}

/// Parses an instance in the text format read by `sfvs solve`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sfvs_instance_parse(text: *const c_char, out: *mut *mut SfvsInstance) -> SfvsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let parsed = parse_instance(str_arg(text, "text")?)?;
        *out = Box::into_raw(Box::new(SfvsInstance::from_problem(&parsed)));
        Ok(())
    })
}

/// Adds the edge `u v`. Duplicates are reported by [`sfvs_solve`].
///
/// # Safety
/// `inst` must come from this library and not be freed.
#[no_mangle]
pub unsafe extern "C" fn sfvs_instance_add_edge(inst: *mut SfvsInstance, u: usize, v: usize) -> SfvsStatus {
    guard(|| {
        let inst = inst_mut(inst)?;
        inst.check_vertex(u)?;
        inst.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u).into());
        }
        inst.edges.push((u, v));
        Ok(())
    })
}

/// # Safety
/// `inst` must come from this library and not be freed.
#[no_mangle]
pub unsafe extern "C" fn sfvs_instance_set_weight(inst: *mut SfvsInstance, v: usize, weight: u64) -> SfvsStatus {
    guard(|| {
        let inst = inst_mut(inst)?;
        inst.check_vertex(v)?;
        if weight == 0 {
            return Err(Error::ZeroWeight(v).into());
        }
        inst.weights[v - 1] = weight;
        Ok(())
    })
}

/// Adds `v` to the special set (S for cycle problems, T for multiway cut).
/// Ignored for `fvs`, where S is always every vertex.
///
/// # Safety
/// `inst` must come from this library and not be freed.
#[no_mangle]
pub unsafe extern "C" fn sfvs_instance_add_special(inst: *mut SfvsInstance, v: usize) -> SfvsStatus {
    guard(|| {
        let inst = inst_mut(inst)?;
        inst.check_vertex(v)?;
        inst.special.push(v);
        Ok(())
    })
}

/// Number of vertices, 0 for a null handle.
///
/// # Safety
/// `inst` must be null or come from this library and not be freed.
#[no_mangle]
pub unsafe extern "C" fn sfvs_instance_vertex_count(inst: *const SfvsInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.n)
}

/// # Safety
/// `inst` must be null or come from this library; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn sfvs_instance_free(inst: *mut SfvsInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Solves `inst` with `algo` (`wsfvs-a3 sfvs-xp nmc-a2 nmcdt-xp wnmcdt-a2
/// oracle`). `d` is the independence bound for the XP solvers; 0 means use
/// the independence number of the graph.
///
/// # Safety
/// `inst` must come from this library, `algo` must be nul-terminated and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sfvs_solve(
    inst: *const SfvsInstance,
    algo: *const c_char,
    d: usize,
    out: *mut *mut SfvsSolution,
) -> SfvsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let inst = inst.as_ref().ok_or_else(|| null("instance"))?;
        let algo: Algorithm = str_arg(algo, "algo")?
            .parse()
            .map_err(|e: String| Fail(SfvsStatus::InvalidArgument, e))?;
        let problem = inst.build()?;
        let sol = solve_instance(algo, &problem, (d > 0).then_some(d), false)?;
        *out = Box::into_raw(Box::new(SfvsSolution { inner: sol }));
        Ok(())
    })
}

/// Total weight removed; 0 for a null handle.
///
/// # Safety
/// `sol` must be null or come from this library and not be freed.
#[no_mangle]
pub unsafe extern "C" fn sfvs_solution_objective(sol: *const SfvsSolution) -> u64 {
    sol.as_ref().map_or(0, |s| s.inner.objective)
}

/// False only for multiway cut instances with adjacent terminals.
///
/// # Safety
/// `sol` must be null or come from this library and not be freed.
#[no_mangle]
pub unsafe extern "C" fn sfvs_solution_feasible(sol: *const SfvsSolution) -> bool {
    sol.as_ref().is_some_and(|s| s.inner.feasible)
}

/// Number of removed vertices.
///
/// # Safety
/// `sol` must be null or come from this library and not be freed.
#[no_mangle]
pub unsafe extern "C" fn sfvs_solution_len(sol: *const SfvsSolution) -> usize {
    sol.as_ref().map_or(0, |s| s.inner.removed.len())
}

/// Copies up to `cap` removed vertices, ascending, into `buf` and returns
/// the total count. Call with `cap = 0` to size the buffer.
///
/// # Safety
/// `buf` must hold `cap` elements; `sol` must come from this library.
#[no_mangle]
pub unsafe extern "C" fn sfvs_solution_removed(sol: *const SfvsSolution, buf: *mut usize, cap: usize) -> usize {
    let Some(sol) = sol.as_ref() else { return 0 };
    let removed = sol.inner.removed.as_slice();
    if !buf.is_null() {
        let k = cap.min(removed.len());
        std::ptr::copy_nonoverlapping(removed.as_ptr(), buf, k);
    }
    removed.len()
}

/// # Safety
/// `sol` must be null or come from this library; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn sfvs_solution_free(sol: *mut SfvsSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}

/// Message for the last failing call on this thread, empty after a
/// success. Valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn sfvs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn sfvs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
