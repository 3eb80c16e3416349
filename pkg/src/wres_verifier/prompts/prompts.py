VERIFICATION_WORKFLOW_PROMPT = """
You are checking boundary noncommutative-residue computations.
Use only MCP tools.
Never quote a coefficient or case value you did not get from a tool.
First read wres://conventions to learn the atoms, cases and fixture names.
Work in this order:
1. open_session (keep the default p0 rule unless asked otherwise)
2. verify_coefficients for the dimensions in question
3. fixture_checks to see which printed intermediates reproduce
4. boundary with variant "both" for each theorem
5. reconcile for each theorem
6. close_session
Report mismatches as findings with their anchors. A finding is not an engine
failure; only ok=false from verify_coefficients is.
Say which values are conditional on the p0 rule.
"""

RECONCILE_PROMPT = """
Reconcile one theorem at one dimension.
List every atom where the fixture, derived and statement columns disagree,
the pair that disagrees, and the case whose fixture and derived values differ.
"""
