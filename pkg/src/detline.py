"""
Determinant lines of linear maps between finite dimensional spaces.

For a matrix M the line det(M) = det(ker M) (x) det(coker M)^* has a
canonical generator: the wedge of the RREF kernel basis, tensored with the
dual of the wedge of the cokernel representatives (the standard basis
vectors that greedily complete the image). Every isomorphism between two
such lines is then a single nonzero rational, and every sign identity about
them is an equality of Fractions.
"""

import random
from fractions import Fraction

from . import linalg
from .exceptions import NotExactException, InvariantViolationException


FORWARD = 'forward'
REVERSE = 'reverse'
ORDERS = (FORWARD, REVERSE)


def sign(exponent):
    return -1 if exponent % 2 else 1


class DetLine(object):
    """
    Canonical generator data of det(M)
    """
    def __init__(self, m):
        self.matrix = m
        _, pivots = linalg.rref(m)
        self.kernel = linalg.nullspace(m)
        self.image = linalg.take(m, cols=pivots)
        self.coker = linalg.complement(m)
        self.reps = linalg.take(linalg.identity(m.shape[0]), cols=self.coker)

    @property
    def dim_kernel(self):
        return self.kernel.shape[1]

    @property
    def dim_coker(self):
        return len(self.coker)

    def kernel_coords(self, x):
        """
        Coordinates of kernel vectors (columns of x) in the canonical kernel basis
        """
        return linalg.coordinates(self.kernel, x)

    def coker_coords(self, y):
        """
        Coordinates of the classes [y] in the basis of cokernel representatives
        """
        frame = linalg.hstack(self.image, self.reps)
        return linalg.coordinates(frame, y)[self.image.shape[1]:, :]


class ExactComplex(object):
    """
    0 -> A_0 -> A_1 -> ... -> A_r -> 0 with maps[i]: A_i -> A_{i+1} and a chosen basis of each term
    """
    def __init__(self, dims, maps, bases=None):
        self.dims = list(dims)
        self.maps = list(maps)
        self.bases = bases or [linalg.identity(d) for d in self.dims]
        if len(self.maps) != len(self.dims) - 1 or len(self.bases) != len(self.dims):
            raise NotExactException('A complex of {} terms needs {} maps'.format(len(self.dims), len(self.dims) - 1))

    def __len__(self):
        return len(self.dims)

    def outgoing(self, i):
        return self.maps[i] if i < len(self.maps) else linalg.zeros(0, self.dims[i])

    def verify(self):
        for i, alpha in enumerate(self.maps):
            if alpha.shape != (self.dims[i + 1], self.dims[i]):
                raise NotExactException('Map {} has shape {}, expected {}'
                                        .format(i, alpha.shape, (self.dims[i + 1], self.dims[i])))
        ranks = [linalg.rank(alpha) for alpha in self.maps]
        for i, dim in enumerate(self.dims):
            incoming = ranks[i - 1] if i > 0 else 0
            outgoing = ranks[i] if i < len(ranks) else 0
            if incoming + outgoing != dim:
                raise NotExactException('Sequence is not exact at term {}'.format(i))
            if 0 < i < len(self.maps) and not linalg.is_zero(linalg.dot(self.maps[i], self.maps[i - 1])):
                raise NotExactException('Consecutive maps at term {} do not compose to zero'.format(i))
        return True

    def rebased(self, changes):
        """
        The same complex in new coordinates x = P_i x' on each term
        :param changes: {list} Invertible matrices P_i
        :return: {ExactComplex} With maps P_{i+1}^-1 alpha_i P_i and bases P_i^-1 B_i
        """
        maps = [linalg.dot(linalg.inverse(changes[i + 1]), linalg.dot(alpha, changes[i]))
                for i, alpha in enumerate(self.maps)]
        bases = [linalg.dot(linalg.inverse(p), b) for p, b in zip(changes, self.bases)]
        return ExactComplex(self.dims, maps, bases)


def _frame(beta, h, order):
    return linalg.hstack(beta, h) if order == FORWARD else linalg.hstack(h, beta)


def acyclic_iso(complex_, order=FORWARD, check=True):
    """
    Scalar of the natural isomorphism (x)_{even} det(A_i) -> (x)_{odd} det(A_i)
    :param complex_: {ExactComplex}
    :param order: {string} 'forward' puts the image of the previous map first in each wedge, 'reverse' last
    :param check: {bool} Verify exactness first
    :return: {Fraction}
    """
    if order not in ORDERS:
        raise ValueError("Order must be one of {}, got '{}'".format(', '.join(ORDERS), order))
    if check:
        complex_.verify()
    scalar = Fraction(1)
    beta = linalg.zeros(complex_.dims[0], 0)
    for i, dim in enumerate(complex_.dims):
        alpha = complex_.outgoing(i)
        h = linalg.take(linalg.identity(dim), cols=linalg.independent_columns(alpha))
        frame = _frame(beta, h, order)
        if frame.shape != (dim, dim):
            raise NotExactException('Sequence is not exact at term {}'.format(i))
        c = linalg.det(linalg.coordinates(complex_.bases[i], frame))
        if c == 0:
            raise NotExactException('Sequence is not exact at term {}'.format(i))
        scalar = scalar * c if i % 2 else scalar / c
        beta = linalg.dot(alpha, h)
    return scalar


def default_right_inverse(alpha):
    h = linalg.take(linalg.identity(alpha.shape[1]), cols=linalg.independent_columns(alpha))
    return linalg.dot(h, linalg.inverse(linalg.dot(alpha, h)))


def random_right_inverse(alpha, rng, entry=3):
    """
    default_right_inverse plus a random map into ker(alpha)
    """
    kernel = linalg.nullspace(alpha)
    shift = random_matrix(rng, kernel.shape[1], alpha.shape[0], entry=entry)
    return default_right_inverse(alpha) + linalg.dot(kernel, shift)


def exact3_iso(complex_, right_inverse=None, order=FORWARD):
    """
    Scalar of det(A_0) (x) det(A_2) -> det(A_1), x_0 (x) x_2 -> alpha_0(x_0) ^ s(x_2)
    :param complex_: {ExactComplex} Three terms
    :param right_inverse: {np.ndarray} Any s with alpha_1 s = 1; one is chosen if omitted
    :return: {Fraction}
    """
    if len(complex_) != 3:
        raise NotExactException('exact3_iso needs a sequence of 3 terms, got {}'.format(len(complex_)))
    complex_.verify()
    a0, a1 = complex_.maps
    s = default_right_inverse(a1) if right_inverse is None else right_inverse
    if linalg.dot(a1, s).tolist() != linalg.identity(complex_.dims[2]).tolist():
        raise ValueError('Given map is not a right inverse')
    images = linalg.dot(a0, complex_.bases[0])
    lifts = linalg.dot(s, complex_.bases[2])
    frame = linalg.hstack(images, lifts) if order == FORWARD else linalg.hstack(lifts, images)
    return linalg.det(linalg.coordinates(complex_.bases[1], frame))


def pad_rows(f, rows):
    """
    f followed by the inclusion of its target as the leading coordinates of F^rows
    """
    if f.shape[0] > rows:
        raise ValueError('Cannot pad {} rows down to {}'.format(f.shape[0], rows))
    return linalg.vstack(f, linalg.zeros(rows - f.shape[0], f.shape[1]))


def stabilized(s, f):
    """
    S_f: V + F^n -> W + F^n, (v, z) -> (Sv + fz, 0)
    """
    w, v = s.shape
    f = pad_rows(f, w)
    n = f.shape[1]
    return linalg.vstack(linalg.hstack(s, f), linalg.zeros(n, v + n))


def stabilization_complex(s, f):
    """
    0 -> ker S -> ker S_f -> F^n -> coker S -> coker S_f -> F^n -> 0 in canonical coordinates
    """
    w, v = s.shape
    f = pad_rows(f, w)
    n = f.shape[1]
    line, line_f = DetLine(s), DetLine(stabilized(s, f))
    k, kf = line.dim_kernel, line_f.dim_kernel
    c, cf = line.dim_coker, line_f.dim_coker
    maps = [
        line_f.kernel_coords(linalg.vstack(line.kernel, linalg.zeros(n, k))),
        linalg.take(line_f.kernel, rows=range(v, v + n)),
        line.coker_coords(f),
        line_f.coker_coords(linalg.vstack(line.reps, linalg.zeros(n, c))),
        linalg.take(line_f.reps, rows=range(w, w + n))
    ]
    return ExactComplex([k, kf, n, c, cf, n], maps)


def stabilize(s, f, order=FORWARD, check=False):
    """
    Scalar of the isomorphism det(S) -> det(S_f) given by the stabilization sequence
    :param s: {np.ndarray} S: V -> W
    :param f: {np.ndarray} f: F^n -> W (or into a leading part of W)
    :return: {Fraction}
    """
    return acyclic_iso(stabilization_complex(s, f), order, check)


def direct_sum(*maps):
    return linalg.hstack(*maps)


def block_order(sizes, order):
    """
    Coordinate indices listing the blocks of the given sizes in a new order
    """
    offsets = [sum(sizes[:i]) for i in range(len(sizes))]
    return [offsets[b] + k for b in order for k in range(sizes[b])]


def transport(m, rows_perm, cols_perm):
    """
    Scalar of det(M) -> det(M') for M'[i, j] = M[rows_perm[i], cols_perm[j]], acting by the
    coordinate permutation on kernel and cokernel
    :return: {tuple} (Fraction, permuted matrix)
    """
    moved = linalg.take(m, rows_perm, cols_perm)
    line, line_p = DetLine(m), DetLine(moved)
    on_kernel = linalg.det(line_p.kernel_coords(linalg.take(line.kernel, rows=cols_perm)))
    on_coker = linalg.det(line_p.coker_coords(linalg.take(line.reps, rows=rows_perm)))
    return on_kernel / on_coker, moved


def _same(a, b):
    return a.shape == b.shape and a.tolist() == b.tolist()


def rank_of(*maps):
    return linalg.rank(linalg.hstack(*maps))


def dim_coker(*maps):
    return maps[0].shape[0] - rank_of(*maps)


def square_sign_exponent(s, f1, f2):
    """
    dim(L_1) * dim(K_2): L_1 the image of F^n1 -> coker S, K_2 the kernel of F^n2 -> coker(S + f1)
    """
    l1 = rank_of(s, f1) - linalg.rank(s)
    k2 = f2.shape[1] - (rank_of(s, f1, f2) - rank_of(s, f1))
    return l1 * k2


def verify_square_sign(s, f1, f2, order=FORWARD):
    """
    Check lambda_3 = (-1)^(dim L_1 dim K_2) lambda_2 lambda_1 for the stabilizations
    det(S) -> det(S_f1) -> det((S_f1)_f2) and det(S) -> det(S_(f1 + f2))
    :return: {bool}
    """
    w = s.shape[0]
    sf1 = stabilized(s, f1)
    lambda1 = stabilize(s, f1, order)
    lambda2 = stabilize(sf1, pad_rows(f2, sf1.shape[0]), order)
    lambda3 = stabilize(s, direct_sum(pad_rows(f1, w), pad_rows(f2, w)), order)
    if not _same(stabilized(sf1, f2), stabilized(s, direct_sum(f1, f2))):
        raise InvariantViolationException('(S_f1)_f2 and S_(f1 + f2) differ')
    return lambda3 == sign(square_sign_exponent(s, f1, f2)) * lambda2 * lambda1


def verify_overlap_sign(t, f1, f2, order=FORWARD):
    """
    For T + f_j surjective, check lambda_2 lambda_1^-1 = (-1)^((n1 + n2) dim coker T) beta_2^-1 beta_1,
    the two sides compared through det(T_(f1 + f2)) = det(T_(f2 + f1))
    :return: {bool}
    """
    w, v = t.shape
    n1, n2 = f1.shape[1], f2.shape[1]
    if dim_coker(t, f1) or dim_coker(t, f2):
        raise ValueError('T + f_j must be surjective')
    lambda1, lambda2 = stabilize(t, f1, order), stabilize(t, f2, order)
    tf1, tf2 = stabilized(t, f1), stabilized(t, f2)
    beta1 = stabilize(tf1, pad_rows(f2, tf1.shape[0]), order)
    beta2 = stabilize(tf2, pad_rows(f1, tf2.shape[0]), order)
    swap, moved = transport(stabilized(tf1, f2), block_order([w, n1, n2], [0, 2, 1]),
                            block_order([v, n1, n2], [0, 2, 1]))
    if not _same(moved, stabilized(tf2, f1)):
        raise InvariantViolationException('Reordered stabilizations differ')
    d = dim_coker(t)
    return lambda2 / lambda1 == sign((n1 + n2) * d) * swap * beta1 / beta2


def parity_switch_sign(t):
    """
    The map det_0(T) -> det_1(T) is multiplication by (-1)^(dim ker T)
    """
    return sign(t.shape[1] - linalg.rank(t))


def auxiliary(t, eps, *maps):
    """
    Cokernel representatives of T + maps, padded with a zero column to the parity eps
    """
    reps = DetLine(linalg.hstack(t, *maps)).reps
    if reps.shape[1] % 2 != eps % 2:
        reps = linalg.hstack(reps, linalg.zeros(t.shape[0], 1))
    return reps


def gamma_iso(t, g, eps1, eps2, f1=None, f2=None, order=FORWARD):
    """
    The canonical isomorphism det_eps1(T) -> det_eps2(T_g), patched through det(T_(g + f1 + f2))
    :param t: {np.ndarray} T: V -> W
    :param g: {np.ndarray} g: F^p -> W
    :param f1: {np.ndarray} F^n1 -> W with T + f1 surjective and n1 = eps1 (mod 2)
    :param f2: {np.ndarray} F^n2 -> W with T + g + f2 surjective and n2 = eps2 (mod 2)
    :return: {Fraction}
    """
    w, v = t.shape
    p = g.shape[1]
    f1 = auxiliary(t, eps1) if f1 is None else f1
    f2 = auxiliary(t, eps2, g) if f2 is None else f2
    n1, n2 = f1.shape[1], f2.shape[1]
    if n1 % 2 != eps1 % 2 or n2 % 2 != eps2 % 2:
        raise ValueError('Auxiliary maps have the wrong parity')
    if dim_coker(t, f1) or dim_coker(t, g, f2):
        raise ValueError('Auxiliary maps must make T + f1 and T + g + f2 surjective')

    # det(T) -> det(T_f1) -> det(T_(f1 + g + f2)), reordered to (V, g, f1, f2)
    tf1 = stabilized(t, f1)
    first = stabilize(t, f1, order) * stabilize(tf1, pad_rows(direct_sum(g, f2), tf1.shape[0]), order)
    p1, end1 = transport(stabilized(tf1, direct_sum(g, f2)), block_order([w, n1, p, n2], [0, 2, 1, 3]),
                         block_order([v, n1, p, n2], [0, 2, 1, 3]))

    # det(T_g) -> det(T_(g + f2)) -> det(T_(g + f2 + f1)), reordered to (V, g, f1, f2)
    tg = stabilized(t, g)
    tgf2 = stabilized(tg, f2)
    second = stabilize(tg, pad_rows(f2, tg.shape[0]), order) * \
        stabilize(tgf2, pad_rows(f1, tgf2.shape[0]), order)
    p2, end2 = transport(stabilized(tgf2, f1), block_order([w, p, n2, n1], [0, 1, 3, 2]),
                         block_order([v, p, n2, n1], [0, 1, 3, 2]))

    if not _same(end1, end2):
        raise InvariantViolationException('Patched stabilizations do not meet')
    return p1 * first / (p2 * second)


def gamma_prime(t, g, order=FORWARD):
    """
    The direct isomorphism det(T) -> det(T_g)
    """
    return stabilize(t, g, order)


def gamma_sign_exponent(t, g, eps1, eps2):
    d1 = dim_coker(t)
    d2 = dim_coker(t, g)
    p = g.shape[1]
    return d1 * eps1 + d2 * eps2 + d1 * p + d1 * d2 + d2


def verify_gamma_sign(t, g, eps1, eps2, order=FORWARD, rng=None):
    """
    Check gamma = (-1)^(d1 eps1 + d2 eps2 + d1 p + d1 d2 + d2) gamma', and that gamma does not
    change when two random columns are added to each auxiliary map
    :return: {bool}
    """
    rng = rng or random.Random(0)
    w = t.shape[0]
    gamma = gamma_iso(t, g, eps1, eps2, order=order)
    if gamma != sign(gamma_sign_exponent(t, g, eps1, eps2)) * gamma_prime(t, g, order):
        return False
    f1 = linalg.hstack(auxiliary(t, eps1), random_matrix(rng, w, 2))
    f2 = linalg.hstack(auxiliary(t, eps2, g), random_matrix(rng, w, 2))
    return gamma_iso(t, g, eps1, eps2, f1, f2, order) == gamma


def functorial_sign_exponent(t, g1, g2, eps2, eps3):
    """
    Exponent of the sign by which gamma(T_g1, g2) gamma(T, g1) differs from gamma(T, g1 + g2)
    """
    p1, p2 = g1.shape[1], g2.shape[1]
    d2 = dim_coker(t, g1)
    d3 = dim_coker(t, g1, g2)
    return p1 * (eps2 + eps3 + p2 + d2 + d3)


def verify_gamma_functorial(t, g1, g2, eps1, eps2, eps3, order=FORWARD):
    """
    Compare det_eps1(T) -> det_eps2(T_g1) -> det_eps3(T_(g1 + g2)) with the direct map
    :return: {bool} True when they agree up to the sign (-1)^(p1 (eps2 + eps3 + p2 + d2 + d3))
    """
    tg1 = stabilized(t, g1)
    composite = gamma_iso(t, g1, eps1, eps2, order=order) * \
        gamma_iso(tg1, pad_rows(g2, tg1.shape[0]), eps2, eps3, order=order)
    direct = gamma_iso(t, direct_sum(g1, g2), eps1, eps3, order=order)
    return composite == sign(functorial_sign_exponent(t, g1, g2, eps2, eps3)) * direct


def random_matrix(rng, rows, cols, max_rank=None, entry=2):
    """
    Random integer matrix, as a product through F^max_rank when a rank cap is given
    """
    def uniform(r, c):
        return linalg.matrix([[rng.randint(-entry, entry) for _ in range(c)] for _ in range(r)], r, c)

    if max_rank is None:
        return uniform(rows, cols)
    return linalg.dot(uniform(rows, max_rank), uniform(max_rank, cols))


def random_invertible(rng, n, entry=2):
    while True:
        m = random_matrix(rng, n, n, entry=entry)
        if linalg.det(m) != 0:
            return m


def random_exact3(rng, max_dim=5):
    """
    0 -> A_0 -> A_1 -> A_2 -> 0 from a random basis change of the split sequence
    """
    a = rng.randint(0, max_dim)
    c = rng.randint(0, max_dim - a)
    p = random_invertible(rng, a + c)
    alpha0 = linalg.take(p, cols=range(a))
    alpha1 = linalg.take(linalg.inverse(p), rows=range(a, a + c))
    return ExactComplex([a, a + c, c], [alpha0, alpha1])


def random_exact_complex(rng, length, max_dim=3):
    """
    A random acyclic complex A_i = X_i + X_(i+1), alpha_i(x_i, x_(i+1)) = (x_(i+1), 0), in random coordinates
    """
    x = [0] + [rng.randint(0, max_dim) for _ in range(length - 1)] + [0]
    dims = [x[i] + x[i + 1] for i in range(length)]
    maps = []
    for i in range(length - 1):
        alpha = linalg.zeros(dims[i + 1], dims[i])
        for k in range(x[i + 1]):
            alpha[k, x[i] + k] = Fraction(1)
        maps.append(alpha)
    split = ExactComplex(dims, maps)
    return split.rebased([random_invertible(rng, d) for d in dims])


def random_square_instance(rng, max_dim=5, max_n=3):
    """
    S: F^v -> F^w of random rank with maps f1, f2 of random rank into F^w
    """
    w = rng.randint(0, max_dim)
    v = rng.randint(0, max_dim)
    s = random_matrix(rng, w, v, rng.randint(0, min(w, v)))
    n1, n2 = rng.randint(0, max_n), rng.randint(0, max_n)
    f1 = random_matrix(rng, w, n1, rng.randint(0, max(n1, 1)))
    f2 = random_matrix(rng, w, n2, rng.randint(0, max(n2, 1)))
    return s, f1, f2


def random_gamma_instance(rng, max_dim=5, max_p=3):
    w = rng.randint(0, max_dim)
    v = rng.randint(0, max_dim)
    t = random_matrix(rng, w, v, rng.randint(0, min(w, v)))
    p = rng.randint(0, max_p)
    g = random_matrix(rng, w, p, rng.randint(0, max(p, 1)))
    return t, g


class DetLineCheck(object):
    """
    Randomized verification of the sign identities, counting passes and failures per identity
    """
    CHECKS = ('exact3', 'square_sign', 'gamma_sign', 'overlap', 'functorial')

    def __init__(self, trials, max_dim=5, seed=0, writer=None):
        self.trials = trials
        self.max_dim = max_dim
        self.rng = random.Random(seed)
        self.writer = writer
        self.counts = {name: {'passed': 0, 'failed': 0} for name in DetLineCheck.CHECKS}
        self.counts['square_sign']['odd'] = 0

    def record(self, name, ok):
        self.counts[name]['passed' if ok else 'failed'] += 1
        if not ok and self.writer is not None:
            self.writer.debug('{} check failed'.format(name))

    def run(self):
        for trial in range(self.trials):
            self.check_exact3()
            self.check_square_sign()
            self.check_gamma_sign(trial)
            self.check_overlap()
            self.check_functorial()
            if self.writer is not None and (trial + 1) % 100 == 0:
                self.writer.progress(trial + 1, self.trials, 'detline trials')
        return self.counts

    def check_exact3(self):
        complex_ = random_exact3(self.rng, self.max_dim)
        s = random_right_inverse(complex_.maps[1], self.rng)
        self.record('exact3', exact3_iso(complex_) == exact3_iso(complex_, s) == acyclic_iso(complex_))

    def check_square_sign(self):
        s, f1, f2 = random_square_instance(self.rng, self.max_dim)
        if square_sign_exponent(s, f1, f2) % 2:
            self.counts['square_sign']['odd'] += 1
        self.record('square_sign', all(verify_square_sign(s, f1, f2, order) for order in ORDERS))

    def check_gamma_sign(self, trial):
        t, g = random_gamma_instance(self.rng, self.max_dim)
        eps1, eps2 = trial % 2, (trial // 2) % 2
        self.record('gamma_sign', all(verify_gamma_sign(t, g, eps1, eps2, order, self.rng) for order in ORDERS))

    def check_overlap(self):
        t, _ = random_gamma_instance(self.rng, self.max_dim)
        w = t.shape[0]
        f1 = linalg.hstack(auxiliary(t, 0), random_matrix(self.rng, w, self.rng.randint(0, 2)))
        f2 = linalg.hstack(auxiliary(t, 1), random_matrix(self.rng, w, self.rng.randint(0, 2)))
        self.record('overlap', verify_overlap_sign(t, f1, f2))

    def check_functorial(self):
        t, g1 = random_gamma_instance(self.rng, self.max_dim - 1, 2)
        g2 = random_matrix(self.rng, t.shape[0], self.rng.randint(0, 2))
        eps = [self.rng.randint(0, 1) for _ in range(3)]
        self.record('functorial', verify_gamma_functorial(t, g1, g2, *eps))


def run_checks(trials, max_dim=5, seed=0, writer=None):
    return DetLineCheck(trials, max_dim, seed, writer).run()
