from setuptools import setup

setup(name='qnest',
      version='0.1',
      description=
      'Deterministic state-vector engine for transferring, copying and '
      'nesting qubits.',
      packages=['qnest'],
      python_requires='>=3.8',
      install_requires=['numpy', 'scipy', 'pycryptodome'],
      entry_points={'console_scripts': ['qnest=qnest.cli:run']},
      platforms=['win32', 'linux'],
      license='GNU LESSER GENERAL PUBLIC LICENSE',
      long_description="""
qnest is a deterministic state-vector engine for transferring, copying
and nesting qubits

It consists of
 formutil      - a module with formatting utilities (matrices, angles,
                 JSON and CSV documents)
 shotrng       - a seeded random stream (AES-128 in counter mode) for
                 measurement sampling
 statevec      - real state vectors, qubits, tensor products and
                 projective measurement
 heaptx        - Givens rotations, heap transforms and transfer
                 unitaries between unit vectors
 gates         - CNOT, Hadamard, 2-XOR, Toffoli, permutation and dense
                 gates applied to state vectors
 nesting       - the three-qubit circuit nesting a doubled qubit, with
                 measurement and shot sampling
 cloninglab    - copier unitaries for known qubits and no-cloning
                 fidelity sweeps
 verify        - the reproduction suite with golden matrices
 cli           - the command line tool qnest

All modules are platform independent, working with Python 3.

Random streams rely on pycryptodome (PyCrypto API), numerics on numpy
and scipy.
""", )
