"""
Algebra-Endpoints
Normalform, Vergleich, Morphismen und der Relationskatalog
"""
import logging

from flask import Blueprint, jsonify, request

from awn.routes import comparator, payload, request_config, required
from awn.services.errors import AwError
from awn.services.morphisms import apply, parse_word, word_rank
from awn.services.parser import read
from awn.services.relations import RelationFamily, relation_instances

algebra_bp = Blueprint('algebra', __name__, url_prefix='/algebra')
cli_logger = logging.getLogger('cli')

VERDICTS = {
    'syntactic': 'ProvedZero',
    'proved': 'ProvedZero',
    'nonzero': 'ProvedNonzero',
    'rep-consistent': 'Inconclusive',
    'inconclusive': 'Inconclusive',
}


@algebra_bp.route('/nf', methods=['POST'])
def normal_form():
    """
    POST /algebra/nf {"expr": "...", "n": 3}

    Normalform bezüglich der (gecachten) Regeln des Rangs
    """
    data = payload()
    config = request_config(data)
    x = read(required(data, 'expr'), config.n, expand=False)
    rules = comparator().rules_for(config.n)
    if rules is None:
        return jsonify({"n": config.n, "result": str(x.expand_letters().absorb_central()), "reduced": False}), 200
    return jsonify({
        "n": config.n,
        "result": str(rules.reduce(x)),
        "reduced": True,
        "incomplete": rules.incomplete
    }), 200


@algebra_bp.route('/eq', methods=['POST'])
def equality():
    """POST /algebra/eq {"left": "...", "right": "..."}"""
    data = payload()
    config = request_config(data)
    left = read(required(data, 'left'), config.n, expand=False)
    right = read(required(data, 'right'), config.n, expand=False)
    result = comparator().compare(left, right)
    return jsonify({
        "verdict": VERDICTS[result.status],
        "status": result.status,
        "detail": result.detail
    }), 200


@algebra_bp.route('/apply', methods=['POST'])
def apply_word():
    """POST /algebra/apply {"word": "r0 r1", "expr": "..."}; rechts wirkt zuerst"""
    data = payload()
    config = request_config(data)
    word = parse_word(required(data, 'word'))
    target = word_rank(word, config.n)
    image = apply(word, read(required(data, 'expr'), config.n, expand=False),
                  structural=not data.get('formula', False))
    cli_logger.info(f"✅ HTTP apply {data['word']}: Rang {config.n} -> {target}")
    return jsonify({"n": target, "result": str(image)}), 200


@algebra_bp.route('/relations', methods=['GET'])
def list_relations():
    """GET /algebra/relations?n=4&family=four-cluster&generalized=1"""
    config = request_config({'n': request.args.get('n')})
    family = request.args.get('family')
    generalized = request.args.get('generalized', '0').lower() in ('1', 'true', 'yes')
    try:
        families = [RelationFamily(family)] if family else list(RelationFamily)
    except ValueError:
        raise AwError(f"Unbekannte Familie {family!r}")
    instances = [inst for fam in families for inst in relation_instances(config.n, fam, generalized)]
    return jsonify({
        "n": config.n,
        "count": len(instances),
        "relations": [{"name": inst.describe(), "family": inst.family.value, "relation": str(inst)}
                      for inst in instances]
    }), 200
