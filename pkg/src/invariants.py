"""
Extremal vectors, the eta sum and the lattice invariant e(L).

For w in L, the eta sum runs over the coset minimizers z of w + 2L at the
level z^2 = w^2:

    eta(L, w, a, m) = sum_z (-1)^(((z + w) / 2)^2) (a . z)^m

It vanishes identically when w is not extremal. e(L) is the largest
ceil((|w^2| - m) / 4) over extremal w and m = w^2 (mod 2) for which the
sum is a nonzero polynomial in a, and never less than 0.
"""

import itertools
import multiprocessing

from . import enumeration
from .lattice import LatticeVector, DualVector, from_gram
from .polynomial import EtaPolynomial, MultinomialCoefficients, expand_power_sum
from .exceptions import ParityMismatchException, DegreeTooLargeException, RankTooLargeException, \
    DimensionMismatchException


DEFAULT_M_MAX = 8
DEFAULT_RANK_GUARD = 20


def coset_sign(lattice, z, w):
    """
    (-1)^(((z + w) / 2)^2) for z in w + 2L
    """
    half = [(a + b) // 2 for a, b in zip(z, w)]
    return -1 if lattice.norm(half) % 2 else 1


def is_extremal(lattice, w, budget=None):
    result = enumeration.coset_min(lattice, w, budget)
    return lattice.norm(w) == result.min_norm


def _check_parity(lattice, w, m):
    if m < 0:
        raise ParityMismatchException('m must be nonnegative, got {}'.format(m))
    if (lattice.norm(w) - m) % 2:
        raise ParityMismatchException('m = {} and w^2 = {} have different parities'.format(m, lattice.norm(w)))


def _positive_half(z):
    for x in z:
        if x:
            return x > 0
    return True


def eta_terms(lattice, w, enumerator=None, budget=None):
    """
    Signed support of the eta sum, folded under z -> -z
    :param lattice: {Lattice}
    :param w: {LatticeVector}
    :return: {list} (weight, z) pairs; each z stands for itself and -z, which carry equal terms
        whenever m = w^2 (mod 2)
    """
    enumerator = enumerator or enumeration.CosetEnumerator(lattice)
    result = enumerator.minimum(w, budget)
    if result.min_norm < lattice.norm(w):
        return []
    return _fold(lattice, w, result.minimizers)


def _fold(lattice, w, minimizers):
    terms = []
    for z in minimizers:
        if z.is_zero():
            terms.append((1, z.coords))
        elif _positive_half(z):
            terms.append((2 * coset_sign(lattice, z, w), z.coords))
    return terms


def eta(lattice, w, a, m, budget=None):
    """
    Exact value of the eta sum at the functional a
    :param lattice: {Lattice}
    :param w: {LatticeVector}
    :param a: {DualVector} Ignored when m = 0
    :param m: {int} Degree, of the same parity as w^2
    :return: {int}
    """
    _check_parity(lattice, w, m)
    if a is None:
        a = DualVector([0] * lattice.rank)
    if len(a) != lattice.rank:
        raise DimensionMismatchException('Expected a functional of length {}, got {}'.format(lattice.rank, len(a)))
    total = 0
    for weight, z in eta_terms(lattice, w, budget=budget):
        total += weight * (a.pairing(z) ** m if m else 1)
    return total


def eta_polynomial(lattice, w, m, budget=None, m_max=DEFAULT_M_MAX):
    _check_parity(lattice, w, m)
    if m > m_max:
        raise DegreeTooLargeException('Degree {} exceeds the maximum {}'.format(m, m_max))
    return expand_power_sum(eta_terms(lattice, w, budget=budget), m, lattice.rank)


def scan_minimal_m(terms, norm, rank, limit, m_max, lenient=False):
    """
    Least m = norm (mod 2), m <= limit, whose eta polynomial is nonzero
    :param lenient: {bool} Stop without a result, instead of raising, when only degrees m >= norm
        remain beyond m_max; those contribute at most 0 to e(L)
    :return: {tuple} (m, EtaPolynomial) or (None, None)
    """
    if not terms:
        return None, None
    for m in range(norm % 2, limit + 1, 2):
        if m > m_max:
            if lenient and m >= norm:
                return None, None
            raise DegreeTooLargeException('Reaching m = {} needs degrees beyond the maximum {}'.format(m, m_max))
        poly = expand_power_sum(terms, m, rank)
        if not poly.is_zero():
            return m, poly
    return None, None


def minimal_m(lattice, w, budget=None, m_max=DEFAULT_M_MAX, limit=None):
    """
    Least admissible m with a nonzero eta polynomial, scanning up to limit (default w^2)
    :return: {int|None}
    """
    norm = lattice.norm(w)
    terms = eta_terms(lattice, w, budget=budget)
    m, _ = scan_minimal_m(terms, norm, lattice.rank, norm if limit is None else limit, m_max)
    return m


def contribution(norm, m):
    """
    ceil((norm - m) / 4)
    """
    return -((m - norm) // 4)


def coset_classes(rank, rank_guard=DEFAULT_RANK_GUARD):
    if rank > rank_guard:
        raise RankTooLargeException('Rank {} exceeds the guard {}'.format(rank, rank_guard))
    return (LatticeVector(c) for c in itertools.product((0, 1), repeat=rank))


def theta_counts(lattice, bound, budget=None):
    """
    Number of lattice vectors of each norm up to bound
    :return: {dict} norm -> count
    """
    counts = {}
    for norm, _ in enumeration.enumerate_lattice_below(lattice, bound, budget):
        counts[norm] = counts.get(norm, 0) + 1
    return counts


class ClassRecord(object):
    """
    One row of the sweep: coset class, its minimal norm, minimal m and contribution.

    Rows assembled from orthogonal blocks keep the block rows they came from in `factors`.
    """
    def __init__(self, coset, min_norm, m, witness, factors=None):
        self.coset = coset
        self.min_norm = min_norm
        self.m = m
        self.witness = witness
        self.factors = factors
        self.contribution = contribution(min_norm, m) if m is not None else None

    def to_dict(self):
        return {
            'class': list(self.coset),
            'min_norm': self.min_norm,
            'minimal_m': self.m,
            'contribution': self.contribution
        }


class EInvariantCertificate(object):
    def __init__(self, value, witness, witness_eta, table, nodes_used, blocks):
        self.value = value
        self.witness_class = witness.coset
        self.witness_w = witness.witness
        self.witness_norm = witness.min_norm
        self.witness_m = witness.m
        self.witness_eta = witness_eta
        self.per_class_table = table
        self.nodes_used = nodes_used
        self.blocks = blocks

    def to_dict(self):
        return {
            'value': self.value,
            'witness': {
                'class': list(self.witness_class),
                'w': list(self.witness_w),
                'norm': self.witness_norm,
                'm': self.witness_m,
                'eta': self.witness_eta.to_dict()
            },
            'blocks': [list(block) for block in self.blocks],
            'per_class_table': [row.to_dict() for row in self.per_class_table],
            'nodes_used': self.nodes_used
        }


def orthogonal_blocks(lattice):
    """
    Coordinates grouped into the connected components of the Gram matrix
    :return: {list} Sorted index lists, ordered by their least index
    """
    rows = lattice.rows
    seen = set()
    blocks = []
    for start in range(lattice.rank):
        if start in seen:
            continue
        seen.add(start)
        block, stack = [], [start]
        while stack:
            i = stack.pop()
            block.append(i)
            for j in range(lattice.rank):
                if rows[i][j] and j not in seen:
                    seen.add(j)
                    stack.append(j)
        blocks.append(sorted(block))
    return blocks


def block_lattice(lattice, block):
    gram = [[lattice.rows[i][j] for j in block] for i in block]
    return from_gram(gram, lattice.sign, '{}[{}]'.format(lattice.label, ','.join(str(i + 1) for i in block)))


def _class_index(coset, block):
    # position of the restricted class in coset_classes order
    index = 0
    for pos in block:
        index = 2 * index + coset[pos]
    return index


class _ClassSweeper(object):
    def __init__(self, lattice, m_max):
        self.lattice = lattice
        self.enumerator = enumeration.CosetEnumerator(lattice)
        self.m_max = m_max

    def __call__(self, classes, budget):
        records = []
        for coset in classes:
            result = self.enumerator.minimum(LatticeVector(coset), budget)
            witness = result.minimizers[0]
            norm = result.min_norm
            terms = _fold(self.lattice, witness, result.minimizers)
            m, _ = scan_minimal_m(terms, norm, self.lattice.rank, norm, self.m_max, lenient=True)
            records.append(ClassRecord(tuple(coset), norm, m, witness))
        return records


_WORKER = {}


def _init_worker(lattice, m_max, allowance):
    _WORKER['sweeper'] = _ClassSweeper(lattice, m_max)
    _WORKER['allowance'] = allowance


def _sweep_chunk(classes):
    budget = enumeration.EnumBudget(_WORKER['allowance'])
    records = _WORKER['sweeper'](classes, budget)
    return records, budget.nodes_used


class EInvariantSweep(object):
    """
    Computes e(L) by visiting every class of L/2L.

    An orthogonal sum L = L1 + ... + Lk is swept block by block: the minimizers of a class
    are products of block minimizers, so N_c and the minimal m add over the blocks, and the
    eta polynomial at the summed degree is a multinomial times the product of block polynomials.
    """
    CHUNK = 256

    def __init__(self, lattice, budget=None, m_max=DEFAULT_M_MAX, rank_guard=DEFAULT_RANK_GUARD, workers=1,
                 writer=None):
        """
        :param lattice: {Lattice}
        :param budget: {enumeration.EnumBudget} Node budget shared by the whole sweep; nodes_used is updated
        :param m_max: {int} Highest degree of eta polynomial to expand
        :param rank_guard: {int} Largest rank to attempt
        :param workers: {int} Worker processes; 0 means one per core
        :param writer: {cli.HlatCli} Optional progress output
        """
        self.lattice = lattice
        self.budget = budget or enumeration.EnumBudget()
        self.m_max = m_max
        self.rank_guard = rank_guard
        self.workers = workers or multiprocessing.cpu_count()
        self.writer = writer

    def run(self):
        if self.lattice.rank > self.rank_guard:
            raise RankTooLargeException('Rank {} exceeds the guard {}'.format(self.lattice.rank, self.rank_guard))
        blocks = orthogonal_blocks(self.lattice)
        if len(blocks) == 1:
            table = self.sweep(self.lattice)
            sublattices = [self.lattice]
        else:
            sublattices = [block_lattice(self.lattice, block) for block in blocks]
            self._debug('{} splits into {} orthogonal blocks'.format(self.lattice.label, len(blocks)))
            table = self.compose(blocks, [self.sweep(sub) for sub in sublattices])
        return self.certify(table, blocks, sublattices)

    def sweep(self, lattice):
        """
        Rows for every class of one block, sorted by class
        """
        classes = [tuple(c) for c in coset_classes(lattice.rank, self.rank_guard)]
        chunks = [classes[i:i + self.CHUNK] for i in range(0, len(classes), self.CHUNK)]
        self._debug('Sweeping {} classes of {} in {} chunks'.format(len(classes), lattice.label, len(chunks)))

        table = []
        if self.workers > 1 and len(chunks) > 1:
            pool = multiprocessing.Pool(self.workers, _init_worker, (lattice, self.m_max, self.budget.remaining()))
            try:
                for done, (records, nodes) in enumerate(pool.imap(_sweep_chunk, chunks), 1):
                    self.budget.charge(nodes)
                    table.extend(records)
                    self._progress(lattice, done, len(chunks))
            finally:
                pool.terminate()
        else:
            sweeper = _ClassSweeper(lattice, self.m_max)
            for done, chunk in enumerate(chunks, 1):
                table.extend(sweeper(chunk, self.budget))
                self._progress(lattice, done, len(chunks))
        table.sort(key=lambda row: row.coset)
        return table

    def compose(self, blocks, parts):
        """
        Rows for every class of the whole lattice from the block rows
        """
        rank = self.lattice.rank
        table, direct = [], []
        for coset in coset_classes(rank, self.rank_guard):
            coset = tuple(coset)
            factors = [part[_class_index(coset, block)] for part, block in zip(parts, blocks)]
            if any(f.m is None for f in factors):
                # a block without a degree <= its N can still pair with slack elsewhere
                direct.append(coset)
                continue
            witness = [0] * rank
            for f, block in zip(factors, blocks):
                for pos, x in zip(block, f.witness):
                    witness[pos] = x
            table.append(ClassRecord(coset, sum(f.min_norm for f in factors), sum(f.m for f in factors),
                                     LatticeVector(witness), factors))
        if direct:
            self._debug('{} classes swept directly'.format(len(direct)))
            table.extend(_ClassSweeper(self.lattice, self.m_max)(direct, self.budget))
        table.sort(key=lambda row: row.coset)
        return table

    def certify(self, table, blocks, sublattices):
        """
        The witness is the row with the largest contribution; ties go to the larger N_c, so E8
        is certified by a norm 4 vector rather than a root, then to the least witness vector.
        """
        scored = [row for row in table if row.contribution is not None]
        best = min(scored, key=lambda row: (-row.contribution, -row.min_norm, row.witness.coords))
        value = max(0, best.contribution)
        if best.factors is None:
            witness_eta = self._eta(self.lattice, best)
        else:
            weight = MultinomialCoefficients(best.m).coef(tuple(f.m for f in best.factors))
            witness_eta = EtaPolynomial.constant(self.lattice.rank, weight)
            for f, block, sub in zip(best.factors, blocks, sublattices):
                witness_eta = witness_eta.times(self._eta(sub, f).embed(self.lattice.rank, block))
        return EInvariantCertificate(value, best, witness_eta, table, self.budget.nodes_used, blocks)

    def _eta(self, lattice, row):
        minimizers = enumeration.CosetEnumerator(lattice).minimum(row.witness, self.budget).minimizers
        return expand_power_sum(_fold(lattice, row.witness, minimizers), row.m, lattice.rank)

    def _debug(self, message):
        if self.writer is not None:
            self.writer.debug(message)

    def _progress(self, lattice, done, total):
        if self.writer is not None:
            self.writer.progress(done, total, '{} chunks'.format(lattice.label))


def e_invariant(lattice, budget=None, m_max=DEFAULT_M_MAX, rank_guard=DEFAULT_RANK_GUARD, workers=1, writer=None):
    """
    e(L) with its certificate
    :return: {EInvariantCertificate}
    """
    return EInvariantSweep(lattice, budget, m_max, rank_guard, workers, writer).run()
