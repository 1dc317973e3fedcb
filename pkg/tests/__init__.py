"""Tests for the Grassmannian toolkit"""
