"""Tests for nilsoliton_checker"""
