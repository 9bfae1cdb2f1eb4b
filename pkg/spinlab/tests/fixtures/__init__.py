from spinlab.tests.fixtures.documents import (  # noqa: F401
    BIANCHI_COUNTEREXAMPLE,
    GOLDENS,
    m5_document,
    m7_document,
    write_document,
)
from spinlab.tests.fixtures.forms import e, forms, nearly_kaehler_torsion, partitions  # noqa: F401
